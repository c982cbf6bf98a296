//! Quasisymmetric functions in the monomial and fundamental bases, and the
//! characteristic map from Grothendieck classes.

use crate::comps::{shuffle_product_f, Composition};
use crate::repn::GrothendieckClass;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Basis {
    M,
    F,
}

/// Integer combination of basis elements indexed by compositions.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(into = "QSymDoc", from = "QSymDoc")]
pub struct QSymElement {
    pub basis: Basis,
    pub terms: BTreeMap<Composition, i64>,
}

#[derive(Clone, Serialize, Deserialize)]
pub struct QSymDoc {
    pub basis: Basis,
    pub terms: Vec<QSymTerm>,
}

#[derive(Clone, Serialize, Deserialize)]
pub struct QSymTerm {
    pub alpha: Composition,
    pub coeff: i64,
}

impl From<QSymElement> for QSymDoc {
    fn from(x: QSymElement) -> Self {
        QSymDoc {
            basis: x.basis,
            terms: x
                .terms
                .into_iter()
                .map(|(alpha, coeff)| QSymTerm { alpha, coeff })
                .collect(),
        }
    }
}

impl From<QSymDoc> for QSymElement {
    fn from(doc: QSymDoc) -> Self {
        let mut out = QSymElement::zero(doc.basis);
        for t in doc.terms {
            out.add_term(t.alpha, t.coeff);
        }
        out
    }
}

impl QSymElement {
    pub fn zero(basis: Basis) -> Self {
        QSymElement {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis_element(basis: Basis, alpha: Composition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(alpha, 1);
        QSymElement { basis, terms }
    }

    pub fn fundamental(alpha: Composition) -> Self {
        Self::basis_element(Basis::F, alpha)
    }

    pub fn add_term(&mut self, alpha: Composition, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.terms.entry(alpha).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn add(&self, other: &QSymElement) -> QSymElement {
        assert_eq!(self.basis, other.basis, "basis mismatch");
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), *c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for QSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.basis {
            Basis::M => "M",
            Basis::F => "F",
        };
        let mut first = true;
        for (alpha, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *c == 1 {
                write!(f, "{tag}{alpha}")?;
            } else {
                write!(f, "{c}*{tag}{alpha}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// All compositions refining `alpha` (each part cut into a composition).
fn refinements(alpha: &Composition) -> Vec<Composition> {
    let mut out = vec![Composition::empty()];
    for &part in alpha.parts() {
        let pieces = crate::comps::compositions_of(part);
        let mut next = Vec::with_capacity(out.len() * pieces.len());
        for prefix in &out {
            for piece in &pieces {
                next.push(prefix.concat(piece));
            }
        }
        out = next;
    }
    out
}

/// Expand `F_alpha` in the monomial basis: the sum of `M_beta` over
/// refinements `beta` of `alpha`.
pub fn f_to_m(alpha: &Composition) -> QSymElement {
    let mut out = QSymElement::zero(Basis::M);
    for beta in refinements(alpha) {
        out.add_term(beta, 1);
    }
    out
}

pub fn f_to_m_element(x: &QSymElement) -> QSymElement {
    assert_eq!(x.basis, Basis::F);
    let mut out = QSymElement::zero(Basis::M);
    for (alpha, c) in &x.terms {
        for beta in refinements(alpha) {
            out.add_term(beta, *c);
        }
    }
    out
}

/// Product in the fundamental basis via the shuffle rule.
pub fn product_f(a: &QSymElement, b: &QSymElement) -> QSymElement {
    assert_eq!(a.basis, Basis::F, "basis mismatch");
    assert_eq!(b.basis, Basis::F, "basis mismatch");
    let mut out = QSymElement::zero(Basis::F);
    for (alpha, ca) in &a.terms {
        for (beta, cb) in &b.terms {
            for (gamma, mult) in shuffle_product_f(alpha, beta) {
                out.add_term(gamma, ca * cb * mult);
            }
        }
    }
    out
}

/// The characteristic map: `[C_alpha] -> F_alpha`, extended linearly.
pub fn characteristic(class: &GrothendieckClass) -> QSymElement {
    let mut out = QSymElement::zero(Basis::F);
    for (alpha, mult) in class.iter() {
        out.add_term(alpha.clone(), *mult);
    }
    out
}
