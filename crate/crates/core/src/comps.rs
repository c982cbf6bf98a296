//! Compositions, descent sets, ribbon box positions, and shuffle products.
//!
//! A composition is drawn as a ribbon diagram whose rows are listed bottom to
//! top: `(2,1,3)` has two boxes in the bottom row. Boxes are read bottom to
//! top, left to right, and a composition of `n` has `n+1` positions where a
//! box may be added, position 1 sitting to the left of the first box.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        assert!(parts.iter().all(|&p| p >= 1), "parts must be positive");
        Composition { parts }
    }

    pub fn empty() -> Self {
        Composition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of columns of the ribbon diagram: `n - l + 1`.
    pub fn width(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.size() - self.len() + 1
        }
    }

    /// Number of positions where a box may be added: `n + 1`.
    pub fn positions(&self) -> usize {
        self.size() + 1
    }

    /// Descent set `{a_1, a_1+a_2, ...}` inside `[n-1]`.
    pub fn descents(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut acc = 0;
        for &p in &self.parts[..self.parts.len().saturating_sub(1)] {
            acc += p;
            out.push(acc);
        }
        out
    }

    pub fn has_descent(&self, i: usize) -> bool {
        let mut acc = 0;
        for &p in &self.parts {
            acc += p;
            if acc == i {
                return acc < self.size();
            }
            if acc > i {
                return false;
            }
        }
        false
    }

    /// Concatenation, the paper's sum `alpha + beta`.
    pub fn concat(&self, other: &Composition) -> Composition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Composition { parts }
    }

    /// Join `alpha <| beta`: the last part of `alpha` merges with the first
    /// part of `beta`.
    pub fn join(&self, other: &Composition) -> Composition {
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        let mut parts = self.parts.clone();
        *parts.last_mut().unwrap() += other.parts[0];
        parts.extend_from_slice(&other.parts[1..]);
        Composition { parts }
    }
}

// Deterministic order everywhere: size ascending, then lexicographic.
impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Composition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| format!("composition must look like [2,1,3], got {s:?}"))?;
        if inner.trim().is_empty() {
            return Ok(Composition::empty());
        }
        let mut parts = Vec::new();
        for piece in inner.split(',') {
            let p: usize = piece
                .trim()
                .parse()
                .map_err(|_| format!("bad part {piece:?} in {s:?}"))?;
            if p == 0 {
                return Err("parts must be positive".into());
            }
            parts.push(p);
        }
        Ok(Composition::new(parts))
    }
}

/// A word with distinct letters; carries its descent set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DescentWord {
    pub letters: Vec<usize>,
}

impl DescentWord {
    pub fn new(letters: Vec<usize>) -> Self {
        let mut seen = letters.clone();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), letters.len(), "letters must be distinct");
        DescentWord { letters }
    }

    pub fn descent_set(&self) -> Vec<usize> {
        (1..self.letters.len())
            .filter(|&i| self.letters[i - 1] > self.letters[i])
            .collect()
    }

    pub fn descent_composition(&self) -> Composition {
        from_descents(&self.descent_set(), self.letters.len()).expect("descents in range")
    }
}

pub fn to_descents(alpha: &Composition) -> Vec<usize> {
    alpha.descents()
}

pub fn from_descents(descents: &[usize], n: usize) -> Result<Composition, String> {
    let mut ds: Vec<usize> = descents.to_vec();
    ds.sort_unstable();
    ds.dedup();
    if let Some(&d) = ds.iter().find(|&&d| d == 0 || d >= n.max(1)) {
        if n == 0 && ds.is_empty() {
        } else {
            return Err(format!("descent {d} outside [{}]", n.saturating_sub(1)));
        }
    }
    if n == 0 {
        return Ok(Composition::empty());
    }
    let mut parts = Vec::new();
    let mut prev = 0;
    for d in ds {
        parts.push(d - prev);
        prev = d;
    }
    parts.push(n - prev);
    Ok(Composition::new(parts))
}

pub fn compositions_of(n: usize) -> Vec<Composition> {
    if n == 0 {
        return vec![Composition::empty()];
    }
    let mut out = Vec::new();
    for mask in 0u64..(1 << (n - 1)) {
        let ds: Vec<usize> = (1..n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        out.push(from_descents(&ds, n).unwrap());
    }
    out.sort();
    out
}

/// Descent pattern of the ribbon obtained from `alpha` by placing its boxes
/// at the positions of `image` inside `[d]` and new boxes elsewhere. The new
/// boxes behave as an increasing run of letters smaller than every letter of
/// the canonical word of `alpha`, so the result does not depend on any word
/// choice.
pub fn factor_of_image_set(alpha: &Composition, d: usize, image: &[usize]) -> Composition {
    let n = alpha.size();
    assert_eq!(image.len(), n, "image must pick out |alpha| boxes");
    assert!(image.windows(2).all(|w| w[0] < w[1]), "image must increase");
    assert!(image.iter().all(|&s| 1 <= s && s <= d), "image outside [d]");
    let mut in_image = vec![false; d + 2];
    let mut rank = vec![0usize; d + 2];
    for (b, &s) in image.iter().enumerate() {
        in_image[s] = true;
        rank[s] = b + 1;
    }
    let mut descents = Vec::new();
    for c in 1..d {
        if in_image[c] && (!in_image[c + 1] || alpha.has_descent(rank[c])) {
            descents.push(c);
        }
    }
    from_descents(&descents, d).unwrap()
}

/// Add one box at `position` (1-based, up to `n+1`). Position 1 extends the
/// bottom row; position `i > 1` puts the new box above box `i-1`.
pub fn add_box(alpha: &Composition, position: usize) -> Composition {
    let n = alpha.size();
    assert!(
        (1..=n + 1).contains(&position),
        "position {position} outside 1..={}",
        n + 1
    );
    let image: Vec<usize> = (1..=n + 1).filter(|&c| c != position).collect();
    factor_of_image_set(alpha, n + 1, &image)
}

/// Multiset of integer multiplicities keyed by composition.
pub type CompositionMultiset = BTreeMap<Composition, i64>;

pub fn multiset_from_iter<I: IntoIterator<Item = Composition>>(it: I) -> CompositionMultiset {
    let mut m = CompositionMultiset::new();
    for c in it {
        *m.entry(c).or_insert(0) += 1;
    }
    m
}

fn weak_compositions(total: usize, slots: usize) -> Vec<Vec<usize>> {
    if slots == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; slots];
    fn rec(total: usize, slot: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slot + 1 == cur.len() {
            cur[slot] = total;
            out.push(cur.clone());
            return;
        }
        for v in 0..=total {
            cur[slot] = v;
            rec(total - v, slot + 1, cur, out);
        }
    }
    rec(total, 0, &mut cur, &mut out);
    out
}

/// All ways of distributing `m` boxes among the `p` highest positions of
/// `alpha`, one multiset entry per distribution. Built by iterated
/// [`add_box`], highest occupied slot first so earlier insertions keep their
/// raw position.
pub fn box_additions(alpha: &Composition, m: usize, p: usize) -> CompositionMultiset {
    let n = alpha.size();
    assert!(p <= n + 1, "p exceeds position count");
    if m == 0 {
        return multiset_from_iter([alpha.clone()]);
    }
    if p == 0 {
        return CompositionMultiset::new();
    }
    let mut out = CompositionMultiset::new();
    for dist in weak_compositions(m, p) {
        let mut shape = alpha.clone();
        // Slot j (0-based) is position n + 1 - p + 1 + j.
        for (j, &count) in dist.iter().enumerate().rev() {
            let position = n + 2 - p + j;
            for _ in 0..count {
                shape = add_box(&shape, position);
            }
        }
        *out.entry(shape).or_insert(0) += 1;
    }
    out
}

/// Canonical word on `lo..lo+n` with the descent set of `alpha`, increasing
/// between descents (later blocks take smaller letters).
pub fn canonical_word(alpha: &Composition, lo: usize) -> Vec<usize> {
    let n = alpha.size();
    let mut word = Vec::with_capacity(n);
    let mut remaining = n;
    for &part in alpha.parts() {
        // This block gets the `part` largest letters below `lo + remaining`,
        // in increasing order.
        for v in 0..part {
            word.push(lo + remaining - part + v);
        }
        remaining -= part;
    }
    word
}

/// Fundamental-basis shuffle multiset: descent compositions of all shuffles
/// of disjoint-alphabet words for `alpha` and `beta`.
pub fn shuffle_product_f(alpha: &Composition, beta: &Composition) -> CompositionMultiset {
    let n = alpha.size();
    let m = beta.size();
    let wa = canonical_word(alpha, 1);
    let wb = canonical_word(beta, n + 1);
    let mut out = CompositionMultiset::new();
    let mut merged = vec![0usize; n + m];
    fn rec(
        wa: &[usize],
        wb: &[usize],
        ia: usize,
        ib: usize,
        merged: &mut Vec<usize>,
        out: &mut CompositionMultiset,
    ) {
        let pos = ia + ib;
        if ia == wa.len() && ib == wb.len() {
            let word = DescentWord::new(merged.clone());
            *out.entry(word.descent_composition()).or_insert(0) += 1;
            return;
        }
        if ia < wa.len() {
            merged[pos] = wa[ia];
            rec(wa, wb, ia + 1, ib, merged, out);
        }
        if ib < wb.len() {
            merged[pos] = wb[ib];
            rec(wa, wb, ia, ib + 1, merged, out);
        }
    }
    rec(&wa, &wb, 0, 0, &mut merged, &mut out);
    out
}

/// Head (first `i` boxes), tail (remaining boxes), and whether the cut falls
/// at a row boundary. Reconstruction: concat at a boundary, join otherwise.
pub fn split(alpha: &Composition, i: usize) -> (Composition, Composition, bool) {
    let n = alpha.size();
    assert!(i <= n, "cut point outside 0..={n}");
    let mut head = Vec::new();
    let mut tail = Vec::new();
    let mut seen = 0;
    let mut boundary = true;
    for &part in alpha.parts() {
        if seen + part <= i {
            head.push(part);
            seen += part;
        } else if seen >= i {
            tail.push(part);
        } else {
            head.push(i - seen);
            tail.push(seen + part - i);
            boundary = false;
            seen = i;
        }
    }
    if i == 0 || i == n {
        boundary = true;
    }
    (
        Composition { parts: head },
        Composition { parts: tail },
        boundary,
    )
}

/// First `i` boxes of `alpha` (the head eta_i).
pub fn head(alpha: &Composition, i: usize) -> Composition {
    split(alpha, i).0
}
