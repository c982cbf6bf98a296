//! Induced modules `M(alpha)` and their padded quotients `M(alpha,k)`:
//! explicit bases by order-preserving injections, the generator action,
//! Hilbert functions, factor multisets, the shift functor at class level,
//! and generation degrees of module sequences.

use crate::category::HModuleSequence;
use crate::comps::{box_additions, head, Composition};
use crate::field::Field;
use crate::linalg::{Mat, Subspace};
use crate::repn::{FiniteModule, GrothendieckClass};
use serde::{Deserialize, Serialize};

/// `M(alpha, k)` with `-1 <= k <= |alpha|`. `k = |alpha|` is the full
/// induced module, `k = -1` the simple concentrated in degree `|alpha|`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PaddedDescriptor {
    pub alpha: Composition,
    pub k: i64,
}

impl PaddedDescriptor {
    pub fn new(alpha: Composition, k: i64) -> Result<Self, String> {
        if k < -1 || k > alpha.size() as i64 {
            return Err(format!(
                "k must lie in -1..={}, got {k}",
                alpha.size()
            ));
        }
        Ok(PaddedDescriptor { alpha, k })
    }

    pub fn full(alpha: Composition) -> Self {
        let k = alpha.size() as i64;
        PaddedDescriptor { alpha, k }
    }

    pub fn n(&self) -> usize {
        self.alpha.size()
    }

    /// Strands pinned to their own position: the first `n - k`.
    fn pinned(&self) -> usize {
        if self.k < 0 {
            self.n()
        } else {
            self.n() - self.k as usize
        }
    }
}

/// Basis vector `g (x) v_alpha`: the image set of an order-preserving
/// injection `[n] -> [d]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct InjBasisElement {
    pub degree: usize,
    pub image: Vec<usize>,
}

/// All basis elements of `M(alpha,k)` in degree `d`, sorted by image set.
pub fn basis(desc: &PaddedDescriptor, d: usize) -> Vec<InjBasisElement> {
    let n = desc.n();
    if d < n || (desc.k == -1 && d > n) {
        return Vec::new();
    }
    let pinned = desc.pinned();
    // image = {1..pinned} followed by a free ascending choice.
    let mut out = Vec::new();
    let mut current: Vec<usize> = (1..=pinned).collect();
    fn rec(
        current: &mut Vec<usize>,
        n: usize,
        d: usize,
        lo: usize,
        out: &mut Vec<InjBasisElement>,
        degree: usize,
    ) {
        if current.len() == n {
            out.push(InjBasisElement {
                degree,
                image: current.clone(),
            });
            return;
        }
        for v in lo..=d {
            current.push(v);
            rec(current, n, d, v + 1, out, degree);
            current.pop();
        }
    }
    rec(&mut current, n, d, pinned + 1, &mut out, d);
    out.sort();
    out
}

/// Result of a generator acting on a basis element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GenAction {
    Zero,
    Keep,
    Move(InjBasisElement),
}

/// Action of `pi_i` in `H_d(0)` on a basis element of `M(alpha,k)`.
///
/// With `S` the image set: both `i, i+1` outside `S` fixes the element;
/// both inside crosses two real strands, which passes to `pi_a` on
/// `v_alpha`; `i` inside and `i+1` outside moves the strand one step right
/// (zero if that breaks a pinned strand of the quotient); `i` outside and
/// `i+1` inside fixes the element.
pub fn act_generator(desc: &PaddedDescriptor, i: usize, e: &InjBasisElement) -> GenAction {
    let d = e.degree;
    assert!(1 <= i && i < d, "generator index out of range");
    let s = &e.image;
    let pos_i = s.iter().position(|&v| v == i);
    let has_next = s.contains(&(i + 1));
    match (pos_i, has_next) {
        (None, _) => GenAction::Keep,
        (Some(a), true) => {
            if desc.alpha.has_descent(a + 1) {
                GenAction::Zero
            } else {
                GenAction::Keep
            }
        }
        (Some(a), false) => {
            if a < desc.pinned() {
                // Moving a pinned strand lands in the quotiented submodule.
                GenAction::Zero
            } else {
                let mut image = s.clone();
                image[a] = i + 1;
                GenAction::Move(InjBasisElement { degree: d, image })
            }
        }
    }
}

/// Hilbert function `C(d - n + k, k)`; the torsion case `k = -1` is one
/// dimension at `d = n` and zero after.
pub fn hilbert(desc: &PaddedDescriptor, d: usize) -> u64 {
    let n = desc.n();
    if d < n {
        return 0;
    }
    if desc.k == -1 {
        return if d == n { 1 } else { 0 };
    }
    let k = desc.k as u64;
    binomial((d - n) as u64 + k, k)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Factor multiset in degree `d`: boxes added to the top `k+1` positions.
pub fn simples_at(desc: &PaddedDescriptor, d: usize) -> GrothendieckClass {
    let n = desc.n();
    if d < n {
        return GrothendieckClass::new();
    }
    if desc.k == -1 {
        return if d == n {
            GrothendieckClass::singleton(desc.alpha.clone())
        } else {
            GrothendieckClass::new()
        };
    }
    box_additions(&desc.alpha, d - n, desc.k as usize + 1).into()
}

/// Matrix realization in degree `d` together with the transition into
/// degree `d+1` (post-composition with the principal injection, i.e. the
/// same image set one degree up).
pub fn as_finite_module<F: Field>(
    field: F,
    desc: &PaddedDescriptor,
    d: usize,
) -> (FiniteModule<F>, Mat<F>) {
    let basis_d = basis(desc, d);
    let basis_next = basis(desc, d + 1);
    let dim = basis_d.len();
    let index = |b: &InjBasisElement, list: &[InjBasisElement]| -> usize {
        list.binary_search(b).expect("basis element present")
    };
    let mut gens = Vec::new();
    for i in 1..d.max(1) {
        let mut m = Mat::zero(field, dim, dim);
        for (col, e) in basis_d.iter().enumerate() {
            match act_generator(desc, i, e) {
                GenAction::Zero => {}
                GenAction::Keep => m.set(col, col, field.one()),
                GenAction::Move(e2) => m.set(index(&e2, &basis_d), col, field.one()),
            }
        }
        gens.push(m);
    }
    if d == 0 {
        gens.clear();
    }
    let module = FiniteModule::new(d, dim, gens);
    let mut transition = Mat::zero(field, basis_next.len(), dim);
    for (col, e) in basis_d.iter().enumerate() {
        let lifted = InjBasisElement {
            degree: d + 1,
            image: e.image.clone(),
        };
        if let Ok(row) = basis_next.binary_search(&lifted) {
            transition.set(row, col, field.one());
        }
        let _ = col;
    }
    (module, transition)
}

/// The sequence `M(alpha,k)` over a degree window.
pub fn padded_sequence<F: Field>(
    field: F,
    desc: &PaddedDescriptor,
    start: usize,
    end: usize,
) -> HModuleSequence<F> {
    assert!(start <= end);
    let mut modules = Vec::new();
    let mut transitions = Vec::new();
    for d in start..=end {
        let (m, t) = as_finite_module(field, desc, d);
        modules.push(m);
        if d < end {
            transitions.push(t);
        }
    }
    HModuleSequence::new(start, modules, transitions)
}

/// Class-level shift functor: `Sigma M(alpha,k)` splits off
/// `M(head, k-1)` when `k >= 1`, is itself for `k = 0`, and is torsion-free
/// zero for `k = -1`.
pub fn shift_class(desc: &PaddedDescriptor) -> Vec<PaddedDescriptor> {
    match desc.k {
        -1 => Vec::new(),
        0 => vec![desc.clone()],
        k => {
            let n = desc.n();
            let truncated = head(&desc.alpha, n - 1);
            vec![
                desc.clone(),
                PaddedDescriptor::new(truncated, k - 1).unwrap(),
            ]
        }
    }
}

/// Per-degree generation counts: the dimension of each degree modulo the
/// Hecke closure of the image of the previous transition. The first degree
/// of the window counts in full.
pub fn generation_degrees<F: Field>(seq: &HModuleSequence<F>) -> Vec<(usize, u64)> {
    let mut out = Vec::new();
    for n in seq.start..=seq.end() {
        let module = seq.module(n);
        let generated = if n == seq.start {
            0
        } else {
            let phi = &seq.transitions[n - 1 - seq.start];
            let cols: Vec<Vec<F::Elem>> = (0..phi.cols).map(|c| phi.col(c)).collect();
            hecke_closure(module, cols).rank() as u64
        };
        let fresh = module.dim as u64 - generated;
        if fresh > 0 {
            out.push((n, fresh));
        }
    }
    out
}

/// Smallest subspace containing the seeds and closed under all generators.
pub fn hecke_closure<F: Field>(
    module: &FiniteModule<F>,
    seeds: Vec<Vec<F::Elem>>,
) -> Subspace<F> {
    let field = module
        .generators()
        .first()
        .map(|g| g.field)
        .unwrap_or_else(|| seeds_field(module));
    let mut space = Subspace::new(field, module.dim);
    let mut queue: Vec<Vec<F::Elem>> = Vec::new();
    for v in seeds {
        if space.insert(v.clone()) {
            queue.push(v);
        }
    }
    while let Some(v) = queue.pop() {
        for g in module.generators() {
            let w = g.mul_vec(&v);
            if space.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    space
}

fn seeds_field<F: Field>(_module: &FiniteModule<F>) -> F {
    panic!("closure over a generator-free module needs an explicit field")
}

/// Dimension per degree of the submodule of `M(alpha,k)` generated by one
/// basis element in degree `n+1`. Generators send basis elements to basis
/// elements or zero, so the closure is plain reachability.
pub fn principal_submodule_dims(
    desc: &PaddedDescriptor,
    generator_index: usize,
    end: usize,
) -> Vec<(usize, u64)> {
    use std::collections::BTreeSet;
    let n = desc.n();
    let first = n + 1;
    assert!(end >= first);
    let start_basis = basis(desc, first);
    assert!(generator_index < start_basis.len(), "no such basis element");
    let mut seeds: BTreeSet<InjBasisElement> =
        [start_basis[generator_index].clone()].into_iter().collect();
    let mut out = Vec::new();
    for d in first..=end {
        let mut reached = seeds.clone();
        let mut queue: Vec<InjBasisElement> = reached.iter().cloned().collect();
        while let Some(e) = queue.pop() {
            for i in 1..d {
                if let GenAction::Move(e2) = act_generator(desc, i, &e) {
                    if reached.insert(e2.clone()) {
                        queue.push(e2);
                    }
                }
            }
        }
        out.push((d, reached.len() as u64));
        seeds = reached
            .into_iter()
            .map(|e| InjBasisElement {
                degree: d + 1,
                image: e.image,
            })
            .collect();
    }
    out
}
