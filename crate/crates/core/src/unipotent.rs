//! The unipotent group `U(n,q)` and its 0-Hecke action.
//!
//! `pi_i` merges strands `i` and `i+1`: column `i+1` takes column `i` on
//! rows above, the `(i,i+1)` entry is cleared, and row `i+1` takes row `i`
//! to the right. The generators are idempotent and satisfy the braid and
//! commutation relations (checked exhaustively in the tests), but no
//! entrywise action of this kind is multiplicative on `U(4,q)`: an
//! exhaustive search over all 81 copy/zero variants of the four affected
//! bands finds none satisfying both the relations and
//! `pi_i(AB) = pi_i(A) pi_i(B)`. The induced maps on homology therefore
//! come from the dual Hecke-operator action (see the borel module), not
//! from this set map.

use std::fmt;

/// Upper unitriangular matrix over `F_q`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct UnipotentMatrix {
    pub n: usize,
    pub q: u64,
    entries: Vec<u64>,
}

impl UnipotentMatrix {
    pub fn identity(n: usize, q: u64) -> Self {
        let mut m = UnipotentMatrix {
            n,
            q,
            entries: vec![0; n * n],
        };
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(q: u64, rows: &[&[u64]]) -> Self {
        let n = rows.len();
        let mut m = UnipotentMatrix {
            n,
            q,
            entries: Vec::with_capacity(n * n),
        };
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n);
            for (j, &v) in row.iter().enumerate() {
                if j < i {
                    assert_eq!(v, 0, "lower entries must vanish");
                }
                if j == i {
                    assert_eq!(v, 1, "diagonal must be one");
                }
                m.entries.push(v % q);
            }
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[(r - 1) * self.n + (c - 1)]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.entries[(r - 1) * self.n + (c - 1)] = v % self.q;
    }

    pub fn is_identity(&self) -> bool {
        *self == UnipotentMatrix::identity(self.n, self.q)
    }

    pub fn mul(&self, other: &UnipotentMatrix) -> UnipotentMatrix {
        assert_eq!((self.n, self.q), (other.n, other.q));
        let n = self.n;
        let mut out = UnipotentMatrix {
            n,
            q: self.q,
            entries: vec![0; n * n],
        };
        for r in 0..n {
            for k in r..n {
                let a = self.entries[r * n + k];
                if a == 0 {
                    continue;
                }
                for c in k..n {
                    out.entries[r * n + c] =
                        (out.entries[r * n + c] + a * other.entries[k * n + c]) % self.q;
                }
            }
        }
        out
    }

    pub fn inverse(&self) -> UnipotentMatrix {
        // I - N + N^2 - ... for the strictly upper part N.
        let n = self.n;
        let id = UnipotentMatrix::identity(n, self.q);
        let mut nilpotent = self.clone();
        for i in 1..=n {
            nilpotent.set(i, i, 0);
        }
        let mut out = id.clone();
        let mut power = id;
        for step in 1..n {
            power = power.mul(&nilpotent);
            let sign_flip = step % 2 == 1;
            for idx in 0..n * n {
                let term = if sign_flip {
                    (self.q - power.entries[idx]) % self.q
                } else {
                    power.entries[idx]
                };
                out.entries[idx] = (out.entries[idx] + term) % self.q;
            }
        }
        debug_assert!(self.mul(&out).is_identity());
        out
    }

    /// Embed into `U(m,q)` with an identity block below.
    pub fn embed(&self, m: usize) -> UnipotentMatrix {
        assert!(m >= self.n);
        let mut out = UnipotentMatrix::identity(m, self.q);
        for r in 1..=self.n {
            for c in r + 1..=self.n {
                out.set(r, c, self.get(r, c));
            }
        }
        out
    }

    /// Dense index among all of `U(n,q)`, mixed radix over the strictly
    /// upper entries.
    pub fn index(&self) -> usize {
        let mut idx = 0usize;
        for r in 1..=self.n {
            for c in r + 1..=self.n {
                idx = idx * self.q as usize + self.get(r, c) as usize;
            }
        }
        idx
    }

    pub fn from_index(n: usize, q: u64, mut idx: usize) -> UnipotentMatrix {
        let mut coords = Vec::new();
        for r in 1..=n {
            for c in r + 1..=n {
                coords.push((r, c));
            }
        }
        let mut m = UnipotentMatrix::identity(n, q);
        for &(r, c) in coords.iter().rev() {
            m.set(r, c, (idx % q as usize) as u64);
            idx /= q as usize;
        }
        m
    }
}

impl fmt::Display for UnipotentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 1..=self.n {
            for c in 1..=self.n {
                if c > 1 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn group_order(n: usize, q: u64) -> usize {
    (q as usize).pow((n * (n - 1) / 2) as u32)
}

pub fn enumerate_group(n: usize, q: u64) -> Vec<UnipotentMatrix> {
    (0..group_order(n, q))
        .map(|i| UnipotentMatrix::from_index(n, q, i))
        .collect()
}

/// Copy column `i` into column `i+1` on rows `1..i-1`, clear `(i,i+1)`,
/// copy row `i` into row `i+1` on columns `i+2..n`.
pub fn unipotent_act(i: usize, m: &UnipotentMatrix) -> UnipotentMatrix {
    assert!(1 <= i && i < m.n, "generator index out of range");
    let mut out = m.clone();
    for r in 1..i {
        out.set(r, i + 1, m.get(r, i));
    }
    out.set(i, i + 1, 0);
    for c in i + 2..=m.n {
        out.set(i + 1, c, m.get(i, c));
    }
    out
}

/// Insertion along an order-preserving injection: entries move to the image
/// rows and columns, missed diagonal positions get ones.
pub fn oi_insert(m: &UnipotentMatrix, target_n: usize, injection: &[usize]) -> UnipotentMatrix {
    assert_eq!(injection.len(), m.n);
    assert!(injection.windows(2).all(|w| w[0] < w[1]));
    assert!(injection.last().is_none_or(|&v| v <= target_n));
    let mut out = UnipotentMatrix::identity(target_n, m.q);
    for r in 1..=m.n {
        for c in r + 1..=m.n {
            out.set(injection[r - 1], injection[c - 1], m.get(r, c));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper_matrix(q: u64, a: u64, b: u64, c: u64) -> UnipotentMatrix {
        UnipotentMatrix::from_rows(
            q,
            &[
                &[1, a, b, 0],
                &[0, 1, c, 0],
                &[0, 0, 1, 0],
                &[0, 0, 0, 1],
            ],
        )
    }

    #[test]
    fn worked_example_both_steps() {
        let q = 5;
        let (a, b, c) = (2, 3, 4);
        let m = paper_matrix(q, a, b, c);
        let step1 = unipotent_act(3, &m);
        let want1 = UnipotentMatrix::from_rows(
            q,
            &[
                &[1, a, b, b],
                &[0, 1, c, c],
                &[0, 0, 1, 0],
                &[0, 0, 0, 1],
            ],
        );
        assert_eq!(step1, want1);
        let step2 = unipotent_act(2, &step1);
        let want2 = UnipotentMatrix::from_rows(
            q,
            &[
                &[1, a, a, b],
                &[0, 1, 0, c],
                &[0, 0, 1, c],
                &[0, 0, 0, 1],
            ],
        );
        assert_eq!(step2, want2);
        let id = UnipotentMatrix::identity(4, q);
        for i in 1..4 {
            assert_eq!(unipotent_act(i, &id), id);
        }
    }

    #[test]
    fn relations_exhaustive() {
        for q in [2u64, 3] {
            for n in 2..=4usize {
                for m in &enumerate_group(n, q) {
                    for i in 1..n {
                        let once = unipotent_act(i, m);
                        assert_eq!(unipotent_act(i, &once), once, "idempotence");
                        if i + 1 < n {
                            let lhs =
                                unipotent_act(i, &unipotent_act(i + 1, &unipotent_act(i, m)));
                            let rhs = unipotent_act(
                                i + 1,
                                &unipotent_act(i, &unipotent_act(i + 1, m)),
                            );
                            assert_eq!(lhs, rhs, "braid");
                        }
                        for j in i + 2..n {
                            assert_eq!(
                                unipotent_act(i, &unipotent_act(j, m)),
                                unipotent_act(j, &unipotent_act(i, m)),
                                "commutation"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicativity_fails() {
        // pi_1(AB) != pi_1(A) pi_1(B) already on U(3,2): the set action is
        // not a monoid endomorphism, and no entrywise variant is (see the
        // module docs). Homology actions must go through Hecke operators.
        let q = 2;
        let a = UnipotentMatrix::from_rows(q, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        let b = UnipotentMatrix::from_rows(q, &[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]]);
        let lhs = unipotent_act(1, &a.mul(&b));
        let rhs = unipotent_act(1, &a).mul(&unipotent_act(1, &b));
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn action_fixes_embedded_subgroup() {
        for q in [2u64, 3] {
            for m in &enumerate_group(3, q) {
                let big = m.embed(5);
                for j in 4..5 {
                    assert_eq!(unipotent_act(j, &big), big);
                }
                for j in 1..3 {
                    assert_eq!(unipotent_act(j, m).embed(5), unipotent_act(j, &big));
                }
            }
        }
    }

    #[test]
    fn oi_agreement_in_the_final_column() {
        // After the fixed left translation by I - E_{2,3}, the composite
        // pi_2 pi_3 of the embedding matches the insertion at {1,3,4} in
        // the final column, the coordinates of the kernel of the projection
        // forgetting the last point.
        let q = 3;
        let mut l = UnipotentMatrix::identity(4, q);
        l.set(2, 3, q - 1);
        for m in enumerate_group(3, q) {
            let ours = unipotent_act(2, &unipotent_act(3, &m.embed(4)));
            let pss = oi_insert(&m, 4, &[1, 3, 4]);
            let translated = l.mul(&ours);
            for r in 1..=4 {
                assert_eq!(translated.get(r, 4), pss.get(r, 4), "row {r}\nm=\n{m}");
            }
        }
    }

    #[test]
    fn group_arithmetic() {
        for q in [2u64, 3] {
            let group = enumerate_group(3, q);
            assert_eq!(group.len(), group_order(3, q));
            for m in &group {
                assert!(m.mul(&m.inverse()).is_identity());
                assert_eq!(UnipotentMatrix::from_index(3, q, m.index()), *m);
            }
        }
    }
}
