//! Parabolic subgroups `⟨Y⟩`, double coset representatives and malnormality.

use thiserror::Error;

use crate::graph::{CommutationGraph, VertexSet};
use crate::words::{canonical_order, geodesic, left_divisors, minimal_form, right_divisors};
use crate::words::{Letter, NormalForm, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CosetError {
    #[error("vertex set is not a clique")]
    NotAClique,
    #[error("vertex set is not contained in the graph")]
    OutOfRange,
}

/// A graph together with the generating set `Y` of `⟨Y⟩`.
#[derive(Clone, Copy, Debug)]
pub struct ParabolicContext<'a> {
    pub graph: &'a CommutationGraph,
    pub subset: VertexSet,
}

/// `w = left · core · right` with `left, right ∈ ⟨Y⟩` and lengths adding up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCosetRep {
    pub left: NormalForm,
    pub core: NormalForm,
    pub right: NormalForm,
}

impl<'a> ParabolicContext<'a> {
    pub fn new(graph: &'a CommutationGraph, subset: VertexSet) -> Result<Self, CosetError> {
        if !subset.is_subset(graph.all()) {
            return Err(CosetError::OutOfRange);
        }
        Ok(ParabolicContext { graph, subset })
    }

    pub fn member(&self, w: &Word) -> bool {
        geodesic(self.graph, w.letters())
            .iter()
            .all(|l| self.subset.contains(l.v()))
    }

    /// Strips the maximal left divisor in `⟨Y⟩`, then the maximal right divisor
    /// of what remains.
    pub fn strip_divisors(&self, w: &Word) -> DoubleCosetRep {
        let (left, core, right) = self.strip_geodesic(geodesic(self.graph, w.letters()));
        let g = self.graph;
        DoubleCosetRep {
            left: minimal_form(g, &Word(left)),
            core: NormalForm::trusted(Word(canonical_order(g, &core))),
            right: minimal_form(g, &Word(right)),
        }
    }

    fn strip_geodesic(&self, mut core: Vec<Letter>) -> (Vec<Letter>, Vec<Letter>, Vec<Letter>) {
        let g = self.graph;
        let mut left = Vec::new();
        loop {
            let found = left_divisors(g, &core)
                .into_iter()
                .find(|l| self.subset.contains(l.v()));
            match found {
                Some(y) => {
                    remove_first_available(g, &mut core, y);
                    left.push(y);
                }
                None => break,
            }
        }
        let mut right = Vec::new();
        loop {
            let found = right_divisors(g, &core)
                .into_iter()
                .find(|l| self.subset.contains(l.v()));
            match found {
                Some(y) => {
                    let mut rev: Vec<Letter> = core.iter().rev().copied().collect();
                    remove_first_available(g, &mut rev, y);
                    rev.reverse();
                    core = rev;
                    right.push(y);
                }
                None => break,
            }
        }
        right.reverse();
        (left, core, right)
    }

    /// Canonical representative of `⟨Y⟩ w ⟨Y⟩`.
    pub fn double_coset_rep(&self, w: &Word) -> NormalForm {
        let (_, core, _) = self.strip_geodesic(geodesic(self.graph, w.letters()));
        NormalForm::trusted(Word(canonical_order(self.graph, &core)))
    }

    /// Double coset representative of a word already known to be geodesic.
    pub(crate) fn double_coset_rep_geodesic(&self, geo: &[Letter]) -> NormalForm {
        let (_, core, _) = self.strip_geodesic(geo.to_vec());
        NormalForm::trusted(Word(canonical_order(self.graph, &core)))
    }
}

fn remove_first_available(g: &CommutationGraph, geo: &mut Vec<Letter>, y: Letter) {
    let mut blocked = VertexSet::EMPTY;
    for i in 0..geo.len() {
        if geo[i] == y && blocked.iter().all(|b| g.commute(b, y.v())) {
            geo.remove(i);
            return;
        }
        blocked.insert(geo[i].v());
    }
    unreachable!("letter is not a divisor");
}

pub fn parabolic_member(g: &CommutationGraph, y: VertexSet, w: &Word) -> bool {
    ParabolicContext { graph: g, subset: y }.member(w)
}

pub fn strip_divisors(g: &CommutationGraph, y: VertexSet, w: &Word) -> DoubleCosetRep {
    ParabolicContext { graph: g, subset: y }.strip_divisors(w)
}

pub fn double_coset_rep(g: &CommutationGraph, y: VertexSet, w: &Word) -> NormalForm {
    ParabolicContext { graph: g, subset: y }.double_coset_rep(w)
}

/// Membership of `w` in the malnormal set of the clique subgroup `⟨B⟩`.
///
/// For `w ∉ ⟨B⟩` this holds iff every `b ∈ B` has a non-neighbour in
/// `supp(w) ∖ B`. Elements of `⟨B⟩` are never in it. With `B` empty the
/// subgroup is trivial and every nontrivial `w` qualifies.
pub fn in_maln(g: &CommutationGraph, b: VertexSet, w: &Word) -> Result<bool, CosetError> {
    if !b.is_subset(g.all()) {
        return Err(CosetError::OutOfRange);
    }
    if !g.is_clique(b).expect("checked range") {
        return Err(CosetError::NotAClique);
    }
    Ok(in_maln_support(g, b, Word(geodesic(g, w.letters())).letter_support()))
}

/// [`in_maln`] from the support of a geodesic; `b` must be a clique.
pub(crate) fn in_maln_support(g: &CommutationGraph, b: VertexSet, supp: VertexSet) -> bool {
    let outside = supp.difference(b);
    if outside.is_empty() {
        return false;
    }
    b.iter()
        .all(|bv| !outside.difference(g.neighbours(bv)).is_empty())
}
