//! Monomials `beta^k x_{i1 j1} x_{i2 j2} ...` in the commutative subdivision
//! algebra and in its noncommutative variant, where `x_{ij}` and `x_{kl}`
//! commute only for `i, j, k, l` distinct. Noncommutative words are kept as
//! the canonical representative of their commutation class, the largest word
//! in the monomial order.
//!
//! Order on monomials: higher x-degree first (`beta` has degree zero), then
//! the words compared letter by letter, where `x_{ij} > x_{kl}` iff `(i, j)`
//! precedes `(k, l)` lexicographically.

use std::cmp::Ordering;
use std::fmt;

use crate::graph::{Edge, Vertex};
use crate::labeled::LabeledGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Mode {
    Commutative,
    Noncommutative,
}

/// `x_{ij} > x_{kl}` iff `(i, j) < (k, l)` lexicographically.
pub fn letter_cmp(a: &Edge, b: &Edge) -> Ordering {
    (b.i(), b.j()).cmp(&(a.i(), a.j()))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    mode: Mode,
    beta_exp: u32,
    word: Vec<Edge>,
}

impl Monomial {
    /// A commutative monomial; the letter multiset is stored sorted.
    pub fn commutative<I: IntoIterator<Item = Edge>>(beta_exp: u32, letters: I) -> Self {
        let mut word: Vec<Edge> = letters.into_iter().collect();
        word.sort_by(letter_cmp);
        Monomial { mode: Mode::Commutative, beta_exp, word }
    }

    /// A noncommutative monomial; the word is replaced by the canonical
    /// representative of its commutation class.
    pub fn noncommutative<I: IntoIterator<Item = Edge>>(beta_exp: u32, word: I) -> Self {
        let word = canonical_word(&word.into_iter().collect::<Vec<_>>());
        Monomial { mode: Mode::Noncommutative, beta_exp, word }
    }

    pub fn one(mode: Mode) -> Self {
        Monomial { mode, beta_exp: 0, word: Vec::new() }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn beta_exp(&self) -> u32 {
        self.beta_exp
    }

    pub fn word(&self) -> &[Edge] {
        &self.word
    }

    /// Number of x-letters; `beta` does not count.
    pub fn degree(&self) -> usize {
        self.word.len()
    }

    pub fn with_extra_beta(&self, k: u32) -> Self {
        let mut m = self.clone();
        m.beta_exp += k;
        m
    }

    /// Smallest vertex count `n+1` covering all letters.
    pub fn min_vertex_count(&self) -> Vertex {
        self.word.iter().map(|e| e.j()).max().unwrap_or(1)
    }

    /// The labeled graph of a noncommutative monomial, edge of label `a` being
    /// the `a`-th letter. Fails on repeated letters.
    pub fn labeled_graph(&self, n_plus_1: Vertex) -> Result<LabeledGraph, crate::labeled::LabelError> {
        LabeledGraph::from_word(n_plus_1, &self.word)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let mode_rank = |m: Mode| match m {
            Mode::Commutative => 0,
            Mode::Noncommutative => 1,
        };
        mode_rank(self.mode)
            .cmp(&mode_rank(other.mode))
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| {
                for (a, b) in self.word.iter().zip(&other.word) {
                    match letter_cmp(a, b) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
            .then_with(|| self.beta_exp.cmp(&other.beta_exp))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.beta_exp > 0 {
            write!(f, "b^{} ", self.beta_exp)?;
        }
        for (idx, e) in self.word.iter().enumerate() {
            if idx > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{}{}", e.i(), e.j())?;
        }
        if self.beta_exp == 0 && self.word.is_empty() {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Letters commute iff they share no vertex.
fn commutes(a: &Edge, b: &Edge) -> bool {
    a.disjoint(b)
}

/// The canonical representative of the commutation class of `word`: the
/// largest equivalent word in the monomial order. Computed greedily: at each
/// step emit the largest letter among those with no earlier non-commuting
/// letter still pending. Equal letters always share a vertex, so the choice is
/// unambiguous and the result is a class invariant.
pub fn canonical_word(word: &[Edge]) -> Vec<Edge> {
    let n = word.len();
    let mut used = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<usize> = None;
        'candidates: for p in 0..n {
            if used[p] {
                continue;
            }
            for q in 0..p {
                if !used[q] && !commutes(&word[q], &word[p]) {
                    continue 'candidates; // p must wait for q
                }
            }
            match best {
                None => best = Some(p),
                Some(b) => {
                    if letter_cmp(&word[p], &word[b]) == Ordering::Greater {
                        best = Some(p);
                    }
                }
            }
        }
        let p = best.expect("some letter is always available");
        used[p] = true;
        out.push(word[p]);
    }
    out
}

/// The strict dependence order on letter positions: `p` before `q` when the
/// letters share a vertex and `p` comes first, closed transitively.
pub(crate) fn dependence_order(word: &[Edge]) -> Vec<Vec<bool>> {
    let n = word.len();
    let mut before = vec![vec![false; n]; n];
    for q in 0..n {
        for p in 0..q {
            if !commutes(&word[p], &word[q]) {
                before[p][q] = true;
            }
        }
    }
    for k in 0..n {
        for p in 0..n {
            if before[p][k] {
                for q in 0..n {
                    if before[k][q] {
                        before[p][q] = true;
                    }
                }
            }
        }
    }
    before
}

/// An occurrence of a factor `x_{ij} x_{jk}` in the commutation class: letter
/// positions `(p, q)` that some equivalent word puts adjacent in this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TipOccurrence {
    pub p: usize,
    pub q: usize,
}

/// All positions `(p, q)` with `word[p] = x_{ij}`, `word[q] = x_{jk}` (head of
/// the first equals tail of the second) such that no letter lies strictly
/// between them in the dependence order; exactly then the two letters can be
/// made adjacent by commutations.
pub fn tip_occurrences(word: &[Edge]) -> Vec<TipOccurrence> {
    let n = word.len();
    let before = dependence_order(word);
    let mut found = Vec::new();
    for p in 0..n {
        for q in 0..n {
            if p == q || word[p].j() != word[q].i() || !before[p][q] {
                continue;
            }
            let blocked = (0..n).any(|r| r != p && r != q && before[p][r] && before[r][q]);
            if !blocked {
                found.push(TipOccurrence { p, q });
            }
        }
    }
    found
}

/// Replaces the factor at occurrence `(p, q)` by `replacement`, commuting the
/// remaining letters out of the way: letters that must precede position `q`
/// stay on the left, the rest move right, preserving their relative order.
pub fn splice_occurrence(word: &[Edge], occ: TipOccurrence, replacement: &[Edge]) -> Vec<Edge> {
    let n = word.len();
    let before = dependence_order(word);
    let mut out = Vec::with_capacity(n + replacement.len());
    for r in 0..n {
        if r != occ.p && r != occ.q && before[r][occ.q] {
            out.push(word[r]);
        }
    }
    out.extend_from_slice(replacement);
    for r in 0..n {
        if r != occ.p && r != occ.q && !before[r][occ.q] {
            out.push(word[r]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: Vertex, j: Vertex) -> Edge {
        Edge::new(i, j).unwrap()
    }

    #[test]
    fn disjoint_letters_sort_to_class_maximum() {
        let m = Monomial::noncommutative(0, [e(3, 4), e(1, 2)]);
        assert_eq!(m.word(), &[e(1, 2), e(3, 4)]);
    }

    #[test]
    fn shared_vertex_blocks_commutation() {
        let m = Monomial::noncommutative(0, [e(2, 3), e(1, 2)]);
        assert_eq!(m.word(), &[e(2, 3), e(1, 2)]);
    }

    #[test]
    fn canonical_is_idempotent() {
        let w = vec![e(4, 6), e(1, 4), e(2, 3)];
        let once = canonical_word(&w);
        assert_eq!(canonical_word(&once), once);
    }

    #[test]
    fn canonical_escapes_local_maximum() {
        // x46 x14 x23: x46/x14 share vertex 4 and are pinned; x23 commutes with
        // both and belongs in front. A hill-climb over adjacent swaps misses
        // this word because swapping x14 x23 alone decreases the order.
        let w = vec![e(4, 6), e(1, 4), e(2, 3)];
        assert_eq!(canonical_word(&w), vec![e(2, 3), e(4, 6), e(1, 4)]);
    }

    #[test]
    fn canonical_equals_brute_force_class_maximum() {
        let words: Vec<Vec<Edge>> = vec![
            vec![e(1, 2), e(3, 4), e(5, 6)],
            vec![e(4, 6), e(1, 4), e(2, 3)],
            vec![e(2, 4), e(1, 4), e(2, 3), e(5, 6)],
            vec![e(1, 3), e(1, 3), e(2, 4)],
            vec![e(3, 4), e(1, 2), e(1, 2), e(3, 4)],
        ];
        for w in words {
            let got = canonical_word(&w);
            let best = commutation_class(&w)
                .into_iter()
                .max_by(|a, b| word_order(a, b))
                .unwrap();
            assert_eq!(got, best, "class maximum of {w:?}");
        }
    }

    fn word_order(a: &[Edge], b: &[Edge]) -> Ordering {
        for (x, y) in a.iter().zip(b) {
            match letter_cmp(x, y) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    fn commutation_class(word: &[Edge]) -> Vec<Vec<Edge>> {
        let mut seen = std::collections::BTreeSet::new();
        let mut stack = vec![word.to_vec()];
        let key = |w: &[Edge]| w.iter().map(|e| (e.i(), e.j())).collect::<Vec<_>>();
        seen.insert(key(word));
        while let Some(w) = stack.pop() {
            for idx in 0..w.len().saturating_sub(1) {
                if w[idx].disjoint(&w[idx + 1]) {
                    let mut swapped = w.clone();
                    swapped.swap(idx, idx + 1);
                    if seen.insert(key(&swapped)) {
                        stack.push(swapped.clone());
                    }
                }
            }
        }
        seen.into_iter()
            .map(|k| k.into_iter().map(|(i, j)| e(i, j)).collect())
            .collect()
    }

    #[test]
    fn tip_found_through_commuting_letter() {
        // x14 x12 x46: the blocker x12 shares vertex 1 with x14 but commutes
        // with x46, so x14 x46 is still a factor of the class.
        let w = vec![e(1, 4), e(1, 2), e(4, 6)];
        let occs = tip_occurrences(&w);
        assert!(occs.contains(&TipOccurrence { p: 0, q: 2 }));
    }

    #[test]
    fn tip_blocked_by_chain() {
        // x14 x12 x26 x46: x12 and x26 chain between the ends and cannot leave.
        let w = vec![e(1, 4), e(1, 2), e(2, 6), e(4, 6)];
        assert!(tip_occurrences(&w).is_empty());
    }

    #[test]
    fn no_tip_in_wrong_direction() {
        let w = vec![e(2, 3), e(1, 2)];
        assert!(tip_occurrences(&w).is_empty());
        let w = vec![e(1, 4), e(2, 3)];
        assert!(tip_occurrences(&w).is_empty());
    }

    #[test]
    fn splice_preserves_outside_letters() {
        let w = vec![e(1, 4), e(1, 2), e(4, 6)];
        let occ = TipOccurrence { p: 0, q: 2 };
        let spliced = splice_occurrence(&w, occ, &[e(1, 6), e(1, 4)]);
        assert_eq!(spliced, vec![e(1, 6), e(1, 4), e(1, 2)]);
    }

    #[test]
    fn monomial_order_examples() {
        let big = Monomial::noncommutative(0, [e(1, 4), e(1, 3), e(1, 2)]);
        let small = Monomial::noncommutative(0, [e(3, 4), e(2, 4), e(1, 4)]);
        assert!(big > small);
        let lower_degree = Monomial::noncommutative(2, [e(1, 4)]);
        assert!(big > lower_degree);
    }
}
