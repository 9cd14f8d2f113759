//! Per-element data for the chunk sets `L_H(d)` and `L_H^U(d)`.

use std::collections::HashMap;

use serde::Serialize;

use super::normal_forms::{check_n, enumerate_normal_forms, NfMode};
use super::CensusError;
use crate::cosets::{in_maln_support, ParabolicContext};
use crate::graph::{CommutationGraph, VertexSet};
use crate::hnn::{chunk_symbol, SigmaLetter};
use crate::words::{is_cyclically_minimal, left_divisors, minimal_form, NormalForm, Word};

/// Largest chunk set the tables will hold.
pub const ELEMENT_BUDGET: usize = 2_000_000;

/// One element of `L_H(d)`.
#[derive(Clone, Debug)]
pub struct ChunkInfo {
    /// The normal form word.
    pub word: Word,
    pub canonical: NormalForm,
    pub in_u: bool,
    /// In `U ∪ Maln_H(U)`.
    pub thick: bool,
    /// Double coset symbol id and orientation; `None` for elements of `U`.
    pub symbol: Option<(u32, bool)>,
    pub cyclically_minimal: bool,
    /// No nontrivial left divisor in `U`.
    pub u_free: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SplitCounts {
    /// First letter `a_i^±` with `3 ≤ i ≤ n − 3`.
    pub a: u64,
    /// First letter `a2^±`.
    pub b: u64,
    /// First letter `a_{n−2}^±`.
    pub c: u64,
}

#[derive(Clone, Debug)]
pub struct Tables {
    pub n: usize,
    pub d: usize,
    pub mode: NfMode,
    pub graph: CommutationGraph,
    pub u: VertexSet,
    /// `L_H(d)` ordered by length.
    pub lh: Vec<ChunkInfo>,
    /// Indices into `lh` of `L_H^U(d)`.
    pub lhu: Vec<usize>,
    /// Positive double coset representatives by symbol id.
    pub symbols: Vec<NormalForm>,
}

impl Tables {
    pub fn build(n: usize, d: usize, mode: NfMode) -> Result<Tables, CensusError> {
        check_n(n)?;
        let graph = CommutationGraph::cycle_with_chord(n).expect("n checked");
        let u = VertexSet::singleton(1).with(n - 1);
        let words = enumerate_normal_forms(n, d, mode, ELEMENT_BUDGET)?;
        let ctx = ParabolicContext { graph: &graph, subset: u };
        let mut ids: HashMap<NormalForm, u32> = HashMap::new();
        let mut symbols = Vec::new();
        let mut lh = Vec::with_capacity(words.len());
        let mut lhu = Vec::new();
        for word in words {
            let canonical = minimal_form(&graph, &word);
            let supp = canonical.support();
            let in_u = supp.is_subset(u);
            let thick = in_u || in_maln_support(&graph, u, supp);
            let symbol = chunk_symbol(&ctx, &canonical).map(|s| match s {
                SigmaLetter::Symbol { rep, inverted } => {
                    let next = ids.len() as u32;
                    let id = *ids.entry(rep.clone()).or_insert_with(|| {
                        symbols.push(rep);
                        next
                    });
                    (id, inverted)
                }
                SigmaLetter::T(_) => unreachable!("chunks carry no t"),
            });
            let u_free = left_divisors(&graph, word.letters())
                .iter()
                .all(|l| !u.contains(l.v()));
            if u_free {
                lhu.push(lh.len());
            }
            lh.push(ChunkInfo {
                cyclically_minimal: is_cyclically_minimal(&graph, &word),
                word,
                canonical,
                in_u,
                thick,
                symbol,
                u_free,
            });
        }
        Ok(Tables { n, d, mode, graph, u, lh, lhu, symbols })
    }

    pub fn l_h(&self) -> u64 {
        self.lh.len() as u64
    }

    /// Normal forms of length exactly `m`.
    pub fn l_hs(&self, m: usize) -> u64 {
        self.lh.iter().filter(|c| c.word.len() == m).count() as u64
    }

    pub fn l_u(&self) -> u64 {
        self.lh.iter().filter(|c| c.in_u).count() as u64
    }

    pub fn l_hu(&self) -> u64 {
        self.lhu.len() as u64
    }

    /// Elements of `L_H^U(d)` outside `U ∪ Maln_H(U)`.
    pub fn e(&self) -> u64 {
        self.lhu.iter().filter(|&&i| !self.lh[i].thick).count() as u64
    }

    /// Elements `u·g₁` of `L_H(d)` with `g₁ ∉ U ∪ Maln_H(U)`.
    pub fn e_prime(&self) -> u64 {
        self.lh.iter().filter(|c| !c.thick).count() as u64
    }

    pub fn t_h(&self) -> u64 {
        self.l_h() - self.e_prime()
    }

    pub fn t_hu(&self) -> u64 {
        self.l_hu() - self.e()
    }

    /// `l(d, 0)`: cyclically minimal normal forms of length at most `d`.
    pub fn l_d0(&self) -> u64 {
        self.lh.iter().filter(|c| c.cyclically_minimal).count() as u64
    }

    pub fn splits(&self) -> SplitCounts {
        let n = self.n;
        let mut s = SplitCounts::default();
        for &i in &self.lhu {
            let Some(first) = self.lh[i].word.letters().first() else {
                continue;
            };
            let v = first.v();
            if v == 2 {
                s.b += 1;
            }
            if v == n - 2 {
                s.c += 1;
            }
            if (3..=n - 3).contains(&v) {
                s.a += 1;
            }
        }
        s
    }
}

/// `|{a_{n−1}^α a1^β : |α| + |β| ≤ d}|`, counted directly.
pub fn enumerate_lu(d: usize) -> u64 {
    let d = d as i64;
    let mut count = 0;
    for alpha in -d..=d {
        for beta in -d..=d {
            if alpha.abs() + beta.abs() <= d {
                count += 1;
            }
        }
    }
    count
}
