//! Finite-dimensional `H_n(0)`-modules as exact generator matrices,
//! composition series, and equivariance checks.

use crate::comps::{from_descents, Composition};
use crate::field::Field;
use crate::linalg::Mat;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// An `H_n(0)`-module: square matrices for the generators `pi_1..pi_{n-1}`
/// acting on column vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteModule<F: Field> {
    pub rank: usize,
    pub dim: usize,
    gens: Vec<Mat<F>>,
}

impl<F: Field> FiniteModule<F> {
    pub fn new(rank: usize, dim: usize, gens: Vec<Mat<F>>) -> Self {
        assert_eq!(gens.len(), rank.saturating_sub(1));
        for g in &gens {
            assert_eq!((g.rows, g.cols), (dim, dim));
        }
        FiniteModule { rank, dim, gens }
    }

    /// Matrix of `pi_i`, `1 <= i <= rank-1`.
    pub fn generator(&self, i: usize) -> &Mat<F> {
        &self.gens[i - 1]
    }

    pub fn generators(&self) -> &[Mat<F>] {
        &self.gens
    }

    /// The simple module `C_alpha` as a 1x1 module.
    pub fn simple(field: F, alpha: &Composition) -> Self {
        let n = alpha.size();
        let gens = (1..n)
            .map(|i| {
                let mut m = Mat::zero(field, 1, 1);
                if !alpha.has_descent(i) {
                    m.set(0, 0, field.one());
                }
                m
            })
            .collect();
        FiniteModule::new(n, 1, gens)
    }

    /// Forget the last generator: same space as a module over `H_{n-1}(0)`.
    pub fn restrict(&self) -> Self {
        assert!(self.rank >= 1, "cannot restrict a rank-0 module");
        let keep = self.rank.saturating_sub(2);
        FiniteModule::new(self.rank - 1, self.dim, self.gens[..keep].to_vec())
    }

    /// Apply `pi_w` along a reduced word.
    pub fn act_word(&self, word: &[usize], v: &[F::Elem]) -> Vec<F::Elem> {
        let mut v = v.to_vec();
        for &i in word.iter().rev() {
            v = self.generator(i).mul_vec(&v);
        }
        v
    }

    pub fn direct_sum(&self, other: &FiniteModule<F>) -> FiniteModule<F> {
        assert_eq!(self.rank, other.rank);
        let dim = self.dim + other.dim;
        let mut gens = Vec::new();
        for i in 1..self.rank {
            let a = self.generator(i);
            let b = other.generator(i);
            let mut m = Mat::zero(a.field, dim, dim);
            for r in 0..a.rows {
                for c in 0..a.cols {
                    m.set(r, c, a.get(r, c).clone());
                }
            }
            for r in 0..b.rows {
                for c in 0..b.cols {
                    m.set(self.dim + r, self.dim + c, b.get(r, c).clone());
                }
            }
            gens.push(m);
        }
        FiniteModule::new(self.rank, dim, gens)
    }

    /// Conjugate every generator by an invertible matrix.
    pub fn change_basis(&self, p: &Mat<F>) -> FiniteModule<F> {
        let pinv = p.inverse().expect("change of basis must be invertible");
        let gens = self.gens.iter().map(|a| p.mul(a).mul(&pinv)).collect();
        FiniteModule::new(self.rank, self.dim, gens)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RelationViolation {
    Skein(usize),
    Braid(usize),
    Commute(usize, usize),
}

impl fmt::Display for RelationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationViolation::Skein(i) => write!(f, "pi_{i}^2 != pi_{i}"),
            RelationViolation::Braid(i) => write!(
                f,
                "pi_{i} pi_{} pi_{i} != pi_{} pi_{i} pi_{}",
                i + 1,
                i + 1,
                i + 1
            ),
            RelationViolation::Commute(i, j) => write!(f, "pi_{i} pi_{j} != pi_{j} pi_{i}"),
        }
    }
}

/// Check the full `H_n(0)` presentation on the generator matrices.
pub fn check_relations<F: Field>(module: &FiniteModule<F>) -> Vec<RelationViolation> {
    let mut report = Vec::new();
    let n = module.rank;
    for i in 1..n {
        let a = module.generator(i);
        if a.mul(a) != *a {
            report.push(RelationViolation::Skein(i));
        }
        if i + 1 < n {
            let b = module.generator(i + 1);
            let lhs = a.mul(b).mul(a);
            let rhs = b.mul(a).mul(b);
            if lhs != rhs {
                report.push(RelationViolation::Braid(i));
            }
        }
        for j in i + 2..n {
            let b = module.generator(j);
            if a.mul(b) != b.mul(a) {
                report.push(RelationViolation::Commute(i, j));
            }
        }
    }
    report
}

/// Multiset of composition factors with integer multiplicities.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(into = "Vec<ClassEntry>", from = "Vec<ClassEntry>")]
pub struct GrothendieckClass(pub BTreeMap<Composition, i64>);

#[derive(Clone, Serialize, Deserialize)]
pub struct ClassEntry {
    pub alpha: Composition,
    pub mult: i64,
}

impl From<GrothendieckClass> for Vec<ClassEntry> {
    fn from(c: GrothendieckClass) -> Self {
        c.0.into_iter()
            .map(|(alpha, mult)| ClassEntry { alpha, mult })
            .collect()
    }
}

impl From<Vec<ClassEntry>> for GrothendieckClass {
    fn from(entries: Vec<ClassEntry>) -> Self {
        let mut c = GrothendieckClass::default();
        for e in entries {
            c.add(&e.alpha, e.mult);
        }
        c
    }
}

impl GrothendieckClass {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(alpha: Composition) -> Self {
        let mut c = Self::default();
        c.add(&alpha, 1);
        c
    }

    pub fn add(&mut self, alpha: &Composition, mult: i64) {
        if mult == 0 {
            return;
        }
        let e = self.0.entry(alpha.clone()).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.0.remove(alpha);
        }
    }

    pub fn add_class(&mut self, other: &GrothendieckClass, scale: i64) {
        for (alpha, m) in &other.0 {
            self.add(alpha, m * scale);
        }
    }

    pub fn total(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mult(&self, alpha: &Composition) -> i64 {
        self.0.get(alpha).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Composition, &i64)> {
        self.0.iter()
    }
}

impl From<crate::comps::CompositionMultiset> for GrothendieckClass {
    fn from(m: crate::comps::CompositionMultiset) -> Self {
        GrothendieckClass(m)
    }
}

impl fmt::Display for GrothendieckClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (alpha, m) in &self.0 {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *m == 1 {
                write!(f, "{alpha}")?;
            } else {
                write!(f, "{m}*{alpha}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn descent_subsets(n: usize) -> Vec<Vec<usize>> {
    // Subsets of [n-1] by size, then lexicographically.
    let gens: Vec<usize> = (1..n).collect();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for mask in 0u64..(1 << gens.len()) {
        let subset: Vec<usize> = gens
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &g)| g)
            .collect();
        out.push(subset);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// For modules whose generator columns are all zero or a unit vector, a
/// composition series can be peeled off combinatorially: a basis vector no
/// generator moves spans a simple submodule, and quotienting deletes it.
/// Idempotence forbids swaps, so a sink always exists. The resulting
/// multiset is the same as for any other filtration.
fn partial_permutation_factors<F: Field>(module: &FiniteModule<F>) -> Option<GrothendieckClass> {
    let f = module.generators().first()?.field;
    let n = module.rank;
    let dim = module.dim;
    // target[g][c] = Some(row) of the unit entry, None for a zero column.
    let mut target: Vec<Vec<Option<usize>>> = Vec::with_capacity(n - 1);
    for g in module.generators() {
        let mut cols = Vec::with_capacity(dim);
        for c in 0..dim {
            let mut hit = None;
            for r in 0..dim {
                let v = g.get(r, c);
                if f.is_zero(v) {
                    continue;
                }
                if !f.is_one(v) || hit.is_some() {
                    return None;
                }
                hit = Some(r);
            }
            cols.push(hit);
        }
        target.push(cols);
    }
    let mut alive: Vec<bool> = vec![true; dim];
    let mut remaining = dim;
    let mut out = GrothendieckClass::new();
    while remaining > 0 {
        let b = (0..dim).find(|&b| {
            alive[b]
                && target
                    .iter()
                    .all(|cols| cols[b].is_none_or(|r| r == b || !alive[r]))
        })?;
        let descents: Vec<usize> = (1..n)
            .filter(|&i| match target[i - 1][b] {
                None => true,
                Some(r) => r != b && !alive[r],
            })
            .collect();
        out.add(&from_descents(&descents, n).unwrap(), 1);
        alive[b] = false;
        remaining -= 1;
    }
    Some(out)
}

/// Composition series multiset. Repeatedly finds a one-dimensional
/// submodule (descent sets searched by size then lex, first kernel vector
/// taken), records it, and passes to the quotient.
pub fn composition_factors<F: Field>(module: &FiniteModule<F>) -> GrothendieckClass {
    if module.rank >= 2 {
        if let Some(fast) = partial_permutation_factors(module) {
            return fast;
        }
    }
    let f = module
        .gens
        .first()
        .map(|g| g.field)
        .unwrap_or_else(|| panic_free_field::<F>(module));
    let n = module.rank;
    let subsets = descent_subsets(n);
    let mut out = GrothendieckClass::new();
    let mut gens = module.gens.clone();
    let mut dim = module.dim;
    while dim > 0 {
        let mut found = None;
        'search: for subset in &subsets {
            // Common eigenvector: pi_i v = 0 for i in D, pi_i v = v otherwise.
            let mut blocks = Vec::new();
            for i in 1..n {
                let a = &gens[i - 1];
                if subset.contains(&i) {
                    blocks.push(a.clone());
                } else {
                    blocks.push(a.sub(&Mat::identity(f, dim)));
                }
            }
            let stacked = if blocks.is_empty() {
                Mat::zero(f, 0, dim)
            } else {
                Mat::stack(&blocks.iter().collect::<Vec<_>>())
            };
            let kernel = stacked.kernel_basis();
            if let Some(v) = kernel.into_iter().next() {
                found = Some((subset.clone(), v));
                break 'search;
            }
        }
        let Some((subset, v)) = found else {
            // The socle of a nonzero module over H_n(0) is nonzero, so this
            // cannot happen for valid input.
            panic!("no one-dimensional submodule found in a nonzero module");
        };
        out.add(&from_descents(&subset, n).unwrap(), 1);
        // Quotient by span(v).
        let pivot = (0..dim).position(|j| !f.is_zero(&v[j])).unwrap();
        let vp_inv = f.inv(&v[pivot]);
        let keep: Vec<usize> = (0..dim).filter(|&j| j != pivot).collect();
        let mut new_gens = Vec::new();
        for a in &gens {
            let mut m = Mat::zero(f, dim - 1, dim - 1);
            for (new_c, &c) in keep.iter().enumerate() {
                let top = a.get(pivot, c);
                for (new_r, &r) in keep.iter().enumerate() {
                    let val = f.sub(a.get(r, c), &f.mul(top, &f.mul(&v[r], &vp_inv)));
                    m.set(new_r, new_c, val);
                }
            }
            new_gens.push(m);
        }
        gens = new_gens;
        dim -= 1;
    }
    out
}

fn panic_free_field<F: Field>(module: &FiniteModule<F>) -> F {
    // Rank <= 1 modules carry no generator matrices, so no field handle; the
    // factor multiset is dim copies of the unique composition of rank.
    // Callers handle this case before reaching here.
    panic!(
        "rank-{} module without generators needs no elimination",
        module.rank
    )
}

/// Composition factors, with the generator-free ranks handled directly.
pub fn composition_factors_total<F: Field>(module: &FiniteModule<F>) -> GrothendieckClass {
    if module.rank <= 1 {
        let mut out = GrothendieckClass::new();
        let alpha = if module.rank == 0 {
            Composition::empty()
        } else {
            Composition::new(vec![1])
        };
        out.add(&alpha, module.dim as i64);
        return out;
    }
    composition_factors(module)
}

/// Generators `i <= src.rank - 1` failing `map . pi_i = pi_i . map`, the
/// target acting through the principal embedding.
pub fn check_equivariant<F: Field>(
    map: &Mat<F>,
    src: &FiniteModule<F>,
    dst: &FiniteModule<F>,
) -> Vec<usize> {
    assert_eq!(map.cols, src.dim, "map domain mismatch");
    assert_eq!(map.rows, dst.dim, "map codomain mismatch");
    assert!(src.rank <= dst.rank, "target rank must dominate");
    let mut bad = Vec::new();
    for i in 1..src.rank {
        if map.mul(src.generator(i)) != dst.generator(i).mul(map) {
            bad.push(i);
        }
    }
    bad
}
