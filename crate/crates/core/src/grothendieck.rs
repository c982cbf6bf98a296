//! Expressing a sequence of Grothendieck classes in the basis of padded
//! induced modules, with an OI standard-module dimension cross-check.

use crate::comps::{compositions_of, Composition};
use crate::field::{Field, PrimeField, Rationals};
use crate::induced::{simples_at, PaddedDescriptor};
use crate::linalg::Mat;
use crate::repn::GrothendieckClass;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Coefficients of `[M(alpha,k)]` fitted over a degree window.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StabilityDecomposition {
    pub terms: Vec<DecompositionTerm>,
    pub window: (usize, usize),
    pub stabilized: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DecompositionTerm {
    pub alpha: Composition,
    pub k: i64,
    pub coeff: i64,
}

impl StabilityDecomposition {
    pub fn coeff(&self, alpha: &Composition, k: i64) -> i64 {
        self.terms
            .iter()
            .find(|t| t.alpha == *alpha && t.k == k)
            .map_or(0, |t| t.coeff)
    }

    /// Class predicted in one degree.
    pub fn synthesize(&self, d: usize) -> GrothendieckClass {
        let mut out = GrothendieckClass::new();
        for t in &self.terms {
            let desc = PaddedDescriptor::new(t.alpha.clone(), t.k).unwrap();
            out.add_class(&simples_at(&desc, d), t.coeff);
        }
        out
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum DecomposeError {
    #[error("classes must cover a contiguous degree window")]
    NonContiguousWindow,
    #[error("window top {top} too small for candidates up to size {max_size}; need at least {need}")]
    WindowTooNarrow {
        top: usize,
        max_size: usize,
        need: usize,
    },
    #[error("no integer combination of padded induced classes matches the window")]
    InconsistentInput,
}

/// Factor multiset of `M(alpha,k)` in degree `d`.
pub fn mak_class_at(alpha: &Composition, k: i64, d: usize) -> Result<GrothendieckClass, String> {
    let desc = PaddedDescriptor::new(alpha.clone(), k)?;
    Ok(simples_at(&desc, d))
}

fn candidates(max_size: usize) -> Vec<(Composition, i64)> {
    let mut out = Vec::new();
    for s in 0..=max_size {
        for alpha in compositions_of(s) {
            for k in (-1..=s as i64).rev() {
                out.push((alpha.clone(), k));
            }
        }
    }
    out
}

fn try_solve<F: Field>(
    field: F,
    table: &[Vec<GrothendieckClass>],
    d0: usize,
    rows: &[(usize, Composition)],
    classes: &BTreeMap<usize, GrothendieckClass>,
) -> Result<Vec<i64>, DecomposeError> {
    let cols = table.len();
    let mut aug = Mat::zero(field, rows.len(), cols + 1);
    for (r, (d, gamma)) in rows.iter().enumerate() {
        for (c, col_classes) in table.iter().enumerate() {
            let m = col_classes[*d - d0].mult(gamma);
            if m != 0 {
                aug.set(r, c, field.from_int(m));
            }
        }
        let b = classes[d].mult(gamma);
        if b != 0 {
            aug.set(r, cols, field.from_int(b));
        }
    }
    let pivots = aug.row_reduce();
    if pivots.contains(&cols) {
        return Err(DecomposeError::InconsistentInput);
    }
    // Distinct padded classes can agree in every degree (telescopes such as
    // [M((1,1),1)] + [M((2),0)] = [M((2),1)] + [M((1,1),0)]), so the system
    // may have free columns; the canonical solution zeroes them, candidates
    // ordered by size, then lex, then k descending.
    let mut coeffs = vec![0i64; cols];
    for (row, &pc) in pivots.iter().enumerate() {
        let v = aug.get(row, cols);
        coeffs[pc] = lift_to_int(field, v).ok_or(DecomposeError::InconsistentInput)?;
    }
    Ok(coeffs)
}

fn lift_to_int<F: Field>(field: F, v: &F::Elem) -> Option<i64> {
    // Small search around zero; decomposition coefficients are tiny.
    if field.is_zero(v) {
        return Some(0);
    }
    for mag in 1..=4096i64 {
        if *v == field.from_int(mag) {
            return Some(mag);
        }
        if *v == field.from_int(-mag) {
            return Some(-mag);
        }
    }
    None
}

/// Fit the window of classes as an integer combination of `[M(alpha,k)]`
/// with `|alpha| <= max_size`.
///
/// Per-degree factor data does not separate all padded classes (see the
/// note in `try_solve`), so the fit is the canonical representative: free
/// coefficients zero under the (size, lex, k-descending) candidate order.
/// A modular solve does the elimination; the result is always certified by
/// exact integer synthesis over the full window, falling back to rational
/// elimination if certification fails. Candidates invisible on the window
/// (all-zero columns) take coefficient zero. If the whole window admits no
/// exact fit but the window minus its top degree does, the fit is returned
/// with `stabilized: false`.
pub fn decompose(
    classes: &BTreeMap<usize, GrothendieckClass>,
    max_size: usize,
) -> Result<StabilityDecomposition, DecomposeError> {
    let Some((&d0, _)) = classes.iter().next() else {
        return Err(DecomposeError::NonContiguousWindow);
    };
    let d1 = *classes.keys().last().unwrap();
    if classes.len() != d1 - d0 + 1 {
        return Err(DecomposeError::NonContiguousWindow);
    }
    let need = 2 * max_size + 1;
    if d1 < need {
        return Err(DecomposeError::WindowTooNarrow {
            top: d1,
            max_size,
            need,
        });
    }

    match fit(classes, max_size, d0, d1) {
        Ok(terms) => Ok(StabilityDecomposition {
            terms,
            window: (d0, d1),
            stabilized: true,
        }),
        Err(DecomposeError::InconsistentInput) if d1 > d0 => {
            // The top of the window may not have stabilized yet.
            let mut trimmed = classes.clone();
            trimmed.remove(&d1);
            let terms = fit(&trimmed, max_size, d0, d1 - 1)?;
            Ok(StabilityDecomposition {
                terms,
                window: (d0, d1),
                stabilized: false,
            })
        }
        Err(e) => Err(e),
    }
}

fn fit(
    classes: &BTreeMap<usize, GrothendieckClass>,
    max_size: usize,
    d0: usize,
    d1: usize,
) -> Result<Vec<DecompositionTerm>, DecomposeError> {
    // Per-candidate classes across the window, computed once; candidates
    // invisible on the window are dropped.
    let mut cands: Vec<(Composition, i64)> = Vec::new();
    let mut table: Vec<Vec<GrothendieckClass>> = Vec::new();
    for (alpha, k) in candidates(max_size) {
        let desc = PaddedDescriptor::new(alpha.clone(), k).unwrap();
        let col: Vec<GrothendieckClass> = (d0..=d1).map(|d| simples_at(&desc, d)).collect();
        if col.iter().any(|cl| !cl.is_zero()) {
            cands.push((alpha, k));
            table.push(col);
        }
    }
    // Rows: every composition appearing in the input or any candidate.
    let mut rows: Vec<(usize, Composition)> = Vec::new();
    for d in d0..=d1 {
        let mut seen: std::collections::BTreeSet<Composition> = std::collections::BTreeSet::new();
        for (gamma, _) in classes[&d].iter() {
            seen.insert(gamma.clone());
        }
        for col in &table {
            for (gamma, _) in col[d - d0].iter() {
                seen.insert(gamma.clone());
            }
        }
        rows.extend(seen.into_iter().map(|g| (d, g)));
    }

    // Certify a coefficient vector by exact synthesis over the table.
    let certify = |coeffs: &[i64]| {
        (d0..=d1).all(|d| {
            let mut acc = GrothendieckClass::new();
            for (col, &coeff) in table.iter().zip(coeffs) {
                acc.add_class(&col[d - d0], coeff);
            }
            acc == classes[&d]
        })
    };
    let modular = PrimeField::new((1u64 << 61) - 1);
    let coeffs = match try_solve(modular, &table, d0, &rows, classes) {
        Ok(c) if certify(&c) => c,
        // Modular rank drops and lift failures fall back to rationals.
        _ => {
            let c = try_solve(Rationals, &table, d0, &rows, classes)?;
            if !certify(&c) {
                return Err(DecomposeError::InconsistentInput);
            }
            c
        }
    };
    Ok(cands
        .iter()
        .zip(&coeffs)
        .filter(|(_, &c)| c != 0)
        .map(|((alpha, k), &coeff)| DecompositionTerm {
            alpha: alpha.clone(),
            k: *k,
            coeff,
        })
        .collect())
}

/// Dimension of the degree-`d` slice of the OI standard module for a word
/// on `{a, b}`: index tuples `1 <= i_1 < ... < i_r = d+1` with `i_j`
/// forced to `i_{j-1} + 1` wherever the word reads `b` (and `i_0 = 0`).
pub fn standard_module_dim(word: &str, d: usize) -> Result<u64, String> {
    if word.is_empty() {
        return Err("word must be nonempty".into());
    }
    let letters: Vec<char> = word.chars().collect();
    if let Some(bad) = letters.iter().find(|c| **c != 'a' && **c != 'b') {
        return Err(format!("letter {bad:?} outside alphabet {{a,b}}"));
    }
    let _r = letters.len();
    // count[j][i] = tuples of the first j indices ending at i
    let mut count = vec![0u64; d + 2];
    count[0] = 1;
    for (j, &letter) in letters.iter().enumerate() {
        let mut next = vec![0u64; d + 2];
        for prev in 0..=d + 1 {
            if count[prev] == 0 {
                continue;
            }
            if letter == 'b' {
                if prev + 1 <= d + 1 {
                    next[prev + 1] += count[prev];
                }
            } else {
                for i in prev + 1..=d + 1 {
                    next[i] += count[prev];
                }
            }
        }
        count = next;
        let _ = j;
    }
    Ok(count[d + 1.min(d + 1)])
}
