//! File formats: modules as exact scalar grids, classes as entry lists, and
//! the result document every CLI invocation prints.

use crate::field::{Field, PrimeField, Rationals};
use crate::linalg::Mat;
use crate::repn::FiniteModule;
use num::BigRational;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

/// On-disk module: `{n, dim, generators}` with row-major exact scalars.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ModuleDoc {
    pub n: usize,
    pub dim: usize,
    /// One row-major `dim*dim` matrix per generator, scalars rendered
    /// exactly (`-3/2`, `4`).
    pub generators: Vec<Vec<String>>,
}

pub fn module_to_doc<F: Field>(module: &FiniteModule<F>) -> ModuleDoc {
    let mut generators = Vec::new();
    for g in module.generators() {
        let mut flat = Vec::with_capacity(module.dim * module.dim);
        for r in 0..module.dim {
            for c in 0..module.dim {
                flat.push(g.field.render(g.get(r, c)));
            }
        }
        generators.push(flat);
    }
    ModuleDoc {
        n: module.rank,
        dim: module.dim,
        generators,
    }
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    BigRational::from_str(s).map_err(|e| format!("bad rational {s:?}: {e}"))
}

pub fn module_from_doc_rational(doc: &ModuleDoc) -> Result<FiniteModule<Rationals>, String> {
    let f = Rationals;
    if doc.generators.len() != doc.n.saturating_sub(1) {
        return Err(format!(
            "rank {} needs {} generators, found {}",
            doc.n,
            doc.n.saturating_sub(1),
            doc.generators.len()
        ));
    }
    let mut gens = Vec::new();
    for flat in &doc.generators {
        if flat.len() != doc.dim * doc.dim {
            return Err("generator has the wrong number of entries".into());
        }
        let mut m = Mat::zero(f, doc.dim, doc.dim);
        for r in 0..doc.dim {
            for c in 0..doc.dim {
                m.set(r, c, parse_rational(&flat[r * doc.dim + c])?);
            }
        }
        gens.push(m);
    }
    Ok(FiniteModule::new(doc.n, doc.dim, gens))
}

pub fn module_from_doc_prime(
    doc: &ModuleDoc,
    p: u64,
) -> Result<FiniteModule<PrimeField>, String> {
    let f = PrimeField::new(p);
    if doc.generators.len() != doc.n.saturating_sub(1) {
        return Err("generator count does not match the rank".into());
    }
    let mut gens = Vec::new();
    for flat in &doc.generators {
        if flat.len() != doc.dim * doc.dim {
            return Err("generator has the wrong number of entries".into());
        }
        let mut m = Mat::zero(f, doc.dim, doc.dim);
        for r in 0..doc.dim {
            for c in 0..doc.dim {
                let v: i64 = flat[r * doc.dim + c]
                    .parse()
                    .map_err(|_| format!("bad residue {:?}", flat[r * doc.dim + c]))?;
                m.set(r, c, f.from_int(v));
            }
        }
        gens.push(m);
    }
    Ok(FiniteModule::new(doc.n, doc.dim, gens))
}

/// Per-degree classes file for the decomposer.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassesDoc {
    pub max_size: usize,
    /// degree (as string, JSON map keys) -> class entries
    pub classes: std::collections::BTreeMap<String, crate::repn::GrothendieckClass>,
}

/// The single JSON document a CLI invocation writes to standard output.
#[derive(Clone, Debug, Serialize)]
pub struct ResultDocument {
    pub verb: String,
    pub params: serde_json::Value,
    pub payload: serde_json::Value,
    pub version: &'static str,
    pub determinism: &'static str,
}

impl ResultDocument {
    pub fn new(verb: &str, params: serde_json::Value, payload: serde_json::Value) -> Self {
        ResultDocument {
            verb: verb.to_string(),
            params,
            payload,
            version: env!("CARGO_PKG_VERSION"),
            determinism: "deterministic: repeated runs with identical inputs are byte-identical",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::hecke::regular_representation;

    #[test]
    fn module_round_trip_rational() {
        let m = regular_representation(Rationals, 3);
        let doc = module_to_doc(&m);
        let text = serde_json::to_string(&doc).unwrap();
        let back: ModuleDoc = serde_json::from_str(&text).unwrap();
        let m2 = module_from_doc_rational(&back).unwrap();
        assert_eq!(m, m2);
    }

    #[test]
    fn module_round_trip_prime() {
        let m = regular_representation(PrimeField::new(3), 3);
        let doc = module_to_doc(&m);
        let m2 = module_from_doc_prime(&doc, 3).unwrap();
        assert_eq!(m, m2);
    }

    #[test]
    fn rational_rendering_round_trips() {
        let f = Rationals;
        for s in ["0", "7", "-3", "5/2", "-11/4"] {
            let v = parse_rational(s).unwrap();
            assert_eq!(f.render(&v), s);
        }
    }
}
