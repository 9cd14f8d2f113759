//! Composed words `L(d, k) = L(d, 0) ∪ L^i(d, k) ∪ L^ii(d, k)` and their
//! classification by the four hypotheses of the embedding theorem.
//!
//! - `L(d, 0)`: cyclically minimal normal forms of `H`-elements of length ≤ d.
//! - `L^i(d, k)`: `u t^{±l}` with `u ∈ L_U(d)`, `1 ≤ l ≤ k`.
//! - `L^ii(d, k)`: `c₀ t^{α₁} g₂ t^{α₂} ⋯ g_r t^{α_r}` with `c₀ ∈ L_H(d)`,
//!   `gᵢ ∈ L_H^U(d)` and `(|α₁|, …, |α_r|)` a composition of some `l ≤ k`.
//!
//! Type (ii) words are tuples; whether the chunks may be trivial is set by
//! [`Convention`]. Classification is formal: thickness and the `t`-root test
//! are read off the chunks as written.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::tables::{ChunkInfo, Tables};
use super::CensusError;
use crate::graph::{CommutationGraph, Vertex};
use crate::hnn::{hnn_factorize, is_t_root, is_t_thick, sigma_is_root, HnnWord, SigmaLetter, SigmaWord};
use crate::words::{minimal_form, Letter, NormalForm, Word};

/// Which type (ii) chunks may be trivial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// `c₀` ranges over all of `L_H(d)` and each `gᵢ` over all of `L_H^U(d)`.
    AllowTrivial,
    /// `c₀ ∈ L_H(d)`, but `gᵢ ≠ 1` for `i ≥ 2`.
    LeadingTrivialOnly,
    /// `c₀ ∉ U` and `gᵢ ≠ 1` for every `i`.
    StrictNontrivial,
}

impl Convention {
    pub const ALL: [Convention; 3] = [
        Convention::AllowTrivial,
        Convention::LeadingTrivialOnly,
        Convention::StrictNontrivial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Convention::AllowTrivial => "allow_trivial",
            Convention::LeadingTrivialOnly => "leading_trivial_only",
            Convention::StrictNontrivial => "strict_nontrivial",
        }
    }
}

/// A composition: positive parts summing to `total()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Composition {
    pub parts: Vec<usize>,
}

impl Composition {
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// All compositions of `l`, in lexicographic order of parts.
    pub fn all(l: usize) -> Vec<Composition> {
        if l == 0 {
            return Vec::new();
        }
        (0..1u64 << (l - 1))
            .map(|mask| {
                let mut parts = vec![1];
                for i in 0..l - 1 {
                    if mask >> (l - 2 - i) & 1 == 1 {
                        parts.push(1);
                    } else {
                        *parts.last_mut().expect("nonempty") += 1;
                    }
                }
                Composition { parts }
            })
            .collect()
    }

    pub fn into_parts(l: usize, r: usize) -> Vec<Composition> {
        Composition::all(l)
            .into_iter()
            .filter(|c| c.parts.len() == r)
            .collect()
    }
}

/// Exponent vectors `(α₁, …, α_r)` with `|αᵢ| = partsᵢ`.
pub(crate) fn signed(parts: &[usize]) -> impl Iterator<Item = Vec<i64>> + '_ {
    (0..1u64 << parts.len()).map(move |mask| {
        parts
            .iter()
            .enumerate()
            .map(|(i, &p)| if mask >> i & 1 == 1 { -(p as i64) } else { p as i64 })
            .collect()
    })
}

/// A composed word, with chunks given as indices into [`Tables::lh`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ComposedWord {
    Base(usize),
    TypeI { u: usize, exponent: i64 },
    TypeII { c0: usize, gs: Vec<usize>, exponents: Vec<i64> },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ZFlags {
    pub z1: bool,
    pub z2: bool,
    pub z3: bool,
    pub z4: bool,
}

impl ZFlags {
    pub fn zy(&self) -> bool {
        self.z1 && self.z2 && self.z3 && self.z4
    }
}

fn t_letters(w: &mut Vec<Letter>, e: i64) {
    for _ in 0..e.unsigned_abs() {
        w.push(Letter::new(0, e < 0));
    }
}

impl ComposedWord {
    pub fn t_length(&self) -> usize {
        match self {
            ComposedWord::Base(_) => 0,
            ComposedWord::TypeI { exponent, .. } => exponent.unsigned_abs() as usize,
            ComposedWord::TypeII { exponents, .. } => {
                exponents.iter().map(|e| e.unsigned_abs() as usize).sum()
            }
        }
    }

    /// The word as written, over the generators of `C′_n`.
    pub fn to_word(&self, tables: &Tables) -> Word {
        let lh = &tables.lh;
        let mut w = Vec::new();
        match self {
            ComposedWord::Base(i) => w.extend_from_slice(lh[*i].word.letters()),
            ComposedWord::TypeI { u, exponent } => {
                w.extend_from_slice(lh[*u].word.letters());
                t_letters(&mut w, *exponent);
            }
            ComposedWord::TypeII { c0, gs, exponents } => {
                w.extend_from_slice(lh[*c0].word.letters());
                t_letters(&mut w, exponents[0]);
                for (g, e) in gs.iter().zip(&exponents[1..]) {
                    w.extend_from_slice(lh[*g].word.letters());
                    t_letters(&mut w, *e);
                }
            }
        }
        Word(w)
    }

    /// Formal factorization: every `t`-letter separates two chunks, trivial
    /// chunks included.
    pub fn formal_hnn(&self, tables: &Tables) -> HnnWord {
        let lh = &tables.lh;
        let mut chunks: Vec<NormalForm> = Vec::new();
        let mut signs = Vec::new();
        let mut run = |first: &NormalForm, tail: &[(i64, Option<&NormalForm>)]| {
            chunks.push(first.clone());
            for (e, next) in tail {
                let m = e.unsigned_abs() as usize;
                for step in 0..m {
                    signs.push(e.signum() as i8);
                    match next {
                        Some(g) if step + 1 == m => chunks.push((*g).clone()),
                        _ => chunks.push(NormalForm::identity()),
                    }
                }
            }
        };
        match self {
            ComposedWord::Base(i) => run(&lh[*i].canonical, &[]),
            ComposedWord::TypeI { u, exponent } => run(&lh[*u].canonical, &[(*exponent, None)]),
            ComposedWord::TypeII { c0, gs, exponents } => {
                let tail: Vec<(i64, Option<&NormalForm>)> = exponents
                    .iter()
                    .enumerate()
                    .map(|(j, &e)| (e, gs.get(j).map(|&g| &lh[g].canonical)))
                    .collect();
                run(&lh[*c0].canonical, &tail);
            }
        }
        HnnWord { t: 0, chunks, signs }
    }
}

fn symbol_letter(c: &ChunkInfo) -> Option<SigmaLetter<u32>> {
    c.symbol.map(|(rep, inverted)| SigmaLetter::Symbol { rep, inverted })
}

/// Classification from the precomputed chunk data.
pub fn classify(tables: &Tables, w: &ComposedWord) -> ZFlags {
    let lh = &tables.lh;
    match w {
        ComposedWord::Base(i) => {
            let c = &lh[*i];
            let mut s = SigmaWord::<u32>::default();
            if let Some(x) = symbol_letter(c) {
                s.push(x);
            }
            ZFlags { z1: false, z2: false, z3: !c.in_u, z4: sigma_is_root(&s) }
        }
        ComposedWord::TypeI { u, exponent } => {
            let mut s = SigmaWord::<u32>::default();
            if let Some(x) = symbol_letter(&lh[*u]) {
                s.push(x);
            }
            s.push(SigmaLetter::T(*exponent));
            ZFlags { z1: true, z2: lh[*u].thick, z3: false, z4: sigma_is_root(&s) }
        }
        ComposedWord::TypeII { c0, gs, exponents } => {
            let mut s = SigmaWord::<u32>::default();
            let mut thick = lh[*c0].thick;
            if let Some(x) = symbol_letter(&lh[*c0]) {
                s.push(x);
            }
            s.push(SigmaLetter::T(exponents[0]));
            for (g, e) in gs.iter().zip(&exponents[1..]) {
                thick &= lh[*g].thick;
                if let Some(x) = symbol_letter(&lh[*g]) {
                    s.push(x);
                }
                s.push(SigmaLetter::T(*e));
            }
            ZFlags { z1: true, z2: thick, z3: true, z4: sigma_is_root(&s) }
        }
    }
}

/// Classification through the factorization layer, chunk by chunk.
pub fn classify_formal(tables: &Tables, w: &ComposedWord) -> ZFlags {
    let g = &tables.graph;
    let h = w.formal_hnn(tables);
    let z1 = h.t_length() >= 1;
    let z3 = match w {
        ComposedWord::Base(i) => !tables.lh[*i].in_u,
        ComposedWord::TypeI { .. } => false,
        ComposedWord::TypeII { .. } => true,
    };
    ZFlags {
        z1,
        z2: z1 && is_t_thick(g, &h).expect("lk(t) is a clique in C′_n"),
        z3,
        z4: is_t_root(g, &h).expect("t is a vertex"),
    }
}

/// Classification of an arbitrary word relative to `t`, using its reduced
/// factorization; `z₃` asks whether the element leaves `⟨st(t)⟩`.
pub fn classify_word(g: &CommutationGraph, t: Vertex, w: &Word) -> Result<ZFlags, CensusError> {
    let h = hnn_factorize(g, t, w).map_err(|e| CensusError::BadParameter(e.to_string()))?;
    let z1 = h.t_length() >= 1;
    let thick = is_t_thick(g, &h).map_err(|e| CensusError::BadParameter(e.to_string()))?;
    let supp = minimal_form(g, w).support();
    Ok(ZFlags {
        z1,
        z2: z1 && thick,
        z3: !supp.is_subset(g.star(t)),
        z4: is_t_root(g, &h).map_err(|e| CensusError::BadParameter(e.to_string()))?,
    })
}

/// Exact tallies over `L(d, k)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub l_d0: BigUint,
    pub l_i: BigUint,
    pub l_ii: BigUint,
    pub z1: BigUint,
    pub z2: BigUint,
    pub z3: BigUint,
    pub z4: BigUint,
    pub zy: BigUint,
    /// `t`-powers among the type (ii) words.
    pub powers_ii: BigUint,
    /// Thick type (ii) words.
    pub thick_ii: BigUint,
}

impl Tally {
    pub fn total(&self) -> BigUint {
        &self.l_d0 + &self.l_i + &self.l_ii
    }

    pub(crate) fn add_flags(&mut self, f: ZFlags, weight: &BigUint) {
        for (hit, slot) in [
            (f.z1, &mut self.z1),
            (f.z2, &mut self.z2),
            (f.z3, &mut self.z3),
            (f.z4, &mut self.z4),
            (f.zy(), &mut self.zy),
        ] {
            if hit {
                *slot += weight;
            }
        }
    }
}

/// Candidate chunk indices for `c₀` and for `g₂, …`.
pub(crate) fn candidates(tables: &Tables, conv: Convention) -> (Vec<usize>, Vec<usize>) {
    let lead: Vec<usize> = (0..tables.lh.len())
        .filter(|&i| conv != Convention::StrictNontrivial || !tables.lh[i].in_u)
        .collect();
    let rest: Vec<usize> = tables
        .lhu
        .iter()
        .copied()
        .filter(|&i| conv == Convention::AllowTrivial || !tables.lh[i].word.is_empty())
        .collect();
    (lead, rest)
}

/// Base and type (i) contributions, which do not depend on the convention.
pub(crate) fn tally_lower_strata(tables: &Tables, k: usize, tally: &mut Tally) {
    let one = BigUint::from(1u32);
    for i in 0..tables.lh.len() {
        if tables.lh[i].cyclically_minimal {
            tally.l_d0 += 1u32;
            tally.add_flags(classify(tables, &ComposedWord::Base(i)), &one);
        }
    }
    for i in (0..tables.lh.len()).filter(|&i| tables.lh[i].in_u) {
        for l in 1..=k as i64 {
            for exponent in [l, -l] {
                tally.l_i += 1u32;
                tally.add_flags(classify(tables, &ComposedWord::TypeI { u: i, exponent }), &one);
            }
        }
    }
}

/// Number of type (ii) tuples, for budget checks.
pub fn type_ii_count(tables: &Tables, k: usize, conv: Convention) -> BigUint {
    let (lead, rest) = candidates(tables, conv);
    let mut total = BigUint::zero();
    for l in 1..=k {
        for c in Composition::all(l) {
            let r = c.parts.len();
            total += (BigUint::from(1u32) << r) * lead.len() * BigUint::from(rest.len()).pow(r as u32 - 1);
        }
    }
    total
}

/// Visits every type (ii) tuple.
pub fn for_each_type_ii(
    tables: &Tables,
    k: usize,
    conv: Convention,
    mut f: impl FnMut(&ComposedWord),
) {
    let (lead, rest) = candidates(tables, conv);
    for l in 1..=k {
        for comp in Composition::all(l) {
            let r = comp.parts.len();
            if lead.is_empty() || (r > 1 && rest.is_empty()) {
                continue;
            }
            for exponents in signed(&comp.parts) {
                let mut idx = vec![0usize; r];
                'tuples: loop {
                    let w = ComposedWord::TypeII {
                        c0: lead[idx[0]],
                        gs: idx[1..].iter().map(|&j| rest[j]).collect(),
                        exponents: exponents.clone(),
                    };
                    f(&w);
                    let mut pos = r;
                    loop {
                        if pos == 0 {
                            break 'tuples;
                        }
                        pos -= 1;
                        let limit = if pos == 0 { lead.len() } else { rest.len() };
                        idx[pos] += 1;
                        if idx[pos] < limit {
                            break;
                        }
                        idx[pos] = 0;
                    }
                }
            }
        }
    }
}

/// Largest number of type (ii) tuples visited one by one.
pub const TUPLE_BUDGET: u64 = 100_000_000;

/// Exact tallies by visiting every composed word.
pub fn enumerate_composed(tables: &Tables, k: usize, conv: Convention) -> Result<Tally, CensusError> {
    if type_ii_count(tables, k, conv) > BigUint::from(TUPLE_BUDGET) {
        return Err(CensusError::BudgetExceeded);
    }
    let mut tally = Tally::default();
    tally_lower_strata(tables, k, &mut tally);
    let mut counts = [0u64; 4];
    for_each_type_ii(tables, k, conv, |w| {
        let f = classify(tables, w);
        counts[0] += 1;
        counts[1] += f.z2 as u64;
        counts[2] += f.z4 as u64;
        counts[3] += f.zy() as u64;
    });
    let [n, z2, z4, zy] = counts;
    tally.l_ii = n.into();
    tally.z1 += n;
    tally.z3 += n;
    tally.z2 += z2;
    tally.z4 += z4;
    tally.zy += zy;
    tally.thick_ii = z2.into();
    tally.powers_ii = (n - z4).into();
    Ok(tally)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::NfMode;
    use crate::words::parse_word;

    #[test]
    fn compositions() {
        assert_eq!(Composition::all(3).len(), 4);
        assert_eq!(Composition::into_parts(5, 2).len(), 4);
        assert!(Composition::all(4).iter().all(|c| c.total() == 4));
    }

    #[test]
    fn word_flags() {
        let g = CommutationGraph::cycle_with_chord(5).unwrap();
        let f = |s: &str| classify_word(&g, 0, &parse_word(s, &g).unwrap()).unwrap();
        assert_eq!(f("t^3"), ZFlags { z1: true, z2: true, z3: false, z4: false });
        assert_eq!(f("a2 t"), ZFlags { z1: true, z2: false, z3: true, z4: true });
        assert_eq!(f("a2 a3 t"), ZFlags { z1: true, z2: true, z3: true, z4: true });
        assert!(!f("a2 a3").z1);
    }

    #[test]
    fn smallest_grid() {
        let t = Tables::build(5, 0, NfMode::Square).unwrap();
        let tally = enumerate_composed(&t, 1, Convention::AllowTrivial).unwrap();
        // 1, t, t^-1 as base / type (i); the type (ii) tuples 1·t^±1 repeat them.
        assert_eq!((tally.l_d0.clone(), tally.l_i.clone(), tally.l_ii.clone()), (1u32.into(), 2u32.into(), 2u32.into()));
        let strict = enumerate_composed(&t, 1, Convention::StrictNontrivial).unwrap();
        assert_eq!(strict.total(), BigUint::from(3u32));
    }
}
