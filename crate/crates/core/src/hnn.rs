//! Factorization relative to a generator `t`.
//!
//! With `H = ⟨A ∖ {t}⟩` and `U = ⟨lk(t)⟩` the group is the HNN extension of
//! `H` in which `t` acts trivially on `U`. An [`HnnWord`] stores
//! `g₀ t^ε₁ g₁ ⋯ t^εₘ gₘ` with every `gᵢ ∈ H`. The symbol map sends each
//! chunk to its `U`-double coset, giving a word in the free product of the
//! free group on coset symbols and `⟨t⟩`.

use std::fmt;

use thiserror::Error;

use crate::cosets::{in_maln_support, ParabolicContext};
use crate::graph::{CommutationGraph, Vertex, VertexSet};
use crate::words::{canonical_order, format_word, geodesic, minimal_form, push_reduced};
use crate::words::{Letter, NormalForm, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HnnError {
    #[error("vertex index {0} is not in the graph")]
    UnknownVertex(usize),
    #[error("lk(t) is not a clique")]
    LinkNotClique,
    #[error("no uniquely positioned split exists")]
    NoSplitFound,
    #[error("chunk contains the stable letter")]
    ChunkContainsT,
    #[error("chunk and sign counts do not match")]
    Shape,
}

/// `g₀ t^ε₁ g₁ ⋯ t^εₘ gₘ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HnnWord {
    pub t: Vertex,
    pub chunks: Vec<NormalForm>,
    pub signs: Vec<i8>,
}

impl HnnWord {
    /// Chunks and signs taken as given, without pinching.
    pub fn formal(t: Vertex, chunks: Vec<NormalForm>, signs: Vec<i8>) -> Result<Self, HnnError> {
        if chunks.len() != signs.len() + 1 {
            return Err(HnnError::Shape);
        }
        if chunks.iter().any(|c| c.support().contains(t)) {
            return Err(HnnError::ChunkContainsT);
        }
        Ok(HnnWord { t, chunks, signs })
    }

    /// Builds a reduced factorization from arbitrary chunks by Britton
    /// pinching, leftmost first.
    pub fn pinched(
        g: &CommutationGraph,
        t: Vertex,
        chunks: &[Word],
        signs: &[i8],
    ) -> Result<Self, HnnError> {
        if chunks.len() != signs.len() + 1 {
            return Err(HnnError::Shape);
        }
        if chunks.iter().any(|c| c.letter_support().contains(t)) {
            return Err(HnnError::ChunkContainsT);
        }
        let u = link_of(g, t)?;
        let in_u = |c: &[Letter]| c.iter().all(|l| u.contains(l.v()));
        let mut out_chunks: Vec<Vec<Letter>> = vec![geodesic(g, chunks[0].letters())];
        let mut out_signs: Vec<i8> = Vec::new();
        for (eps, chunk) in signs.iter().zip(&chunks[1..]) {
            let last_in_u = in_u(out_chunks.last().expect("nonempty"));
            if out_signs.last() == Some(&-eps) && last_in_u {
                let mid = out_chunks.pop().expect("nonempty");
                out_signs.pop();
                let prev = out_chunks.last_mut().expect("a chunk precedes every sign");
                for &x in mid.iter().chain(chunk.letters()) {
                    push_reduced(g, prev, x);
                }
            } else {
                out_signs.push(*eps);
                out_chunks.push(geodesic(g, chunk.letters()));
            }
        }
        Ok(HnnWord {
            t,
            chunks: out_chunks
                .into_iter()
                .map(|c| NormalForm::trusted(Word(canonical_order(g, &c))))
                .collect(),
            signs: out_signs,
        })
    }

    pub fn t_length(&self) -> usize {
        self.signs.len()
    }

    /// The product as a plain word.
    pub fn to_word(&self) -> Word {
        let mut letters = self.chunks[0].letters().to_vec();
        for (eps, chunk) in self.signs.iter().zip(&self.chunks[1..]) {
            letters.push(Letter::new(self.t, *eps < 0));
            letters.extend_from_slice(chunk.letters());
        }
        Word(letters)
    }

    pub fn display<'a>(&'a self, g: &'a CommutationGraph) -> impl fmt::Display + 'a {
        HnnDisplay(g, self)
    }
}

struct HnnDisplay<'a>(&'a CommutationGraph, &'a HnnWord);

impl fmt::Display for HnnDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (g, h) = (self.0, self.1);
        let t = g.name(h.t);
        let mut parts = vec![format!("({})", format_word(g, h.chunks[0].word()))];
        for (eps, c) in h.signs.iter().zip(&h.chunks[1..]) {
            parts.push(if *eps > 0 { t.to_string() } else { format!("{t}^-1") });
            parts.push(format!("({})", format_word(g, c.word())));
        }
        f.write_str(&parts.join(" "))
    }
}

/// One letter of a symbol word: a double coset symbol or a power of `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SigmaLetter<S = NormalForm> {
    /// `rep` is the orientation chosen as positive; `inverted` selects `rep⁻¹`.
    Symbol { rep: S, inverted: bool },
    T(i64),
}

impl<S: Clone + PartialEq> SigmaLetter<S> {
    pub fn inv(&self) -> SigmaLetter<S> {
        match self {
            SigmaLetter::Symbol { rep, inverted } => SigmaLetter::Symbol {
                rep: rep.clone(),
                inverted: !inverted,
            },
            SigmaLetter::T(k) => SigmaLetter::T(-k),
        }
    }

    pub fn is_t(&self) -> bool {
        matches!(self, SigmaLetter::T(_))
    }
}

/// A freely reduced word in the free product of the coset-symbol free group and `⟨t⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SigmaWord<S = NormalForm>(pub Vec<SigmaLetter<S>>);

impl<S> Default for SigmaWord<S> {
    fn default() -> Self {
        SigmaWord(Vec::new())
    }
}

impl<S: Clone + PartialEq> SigmaWord<S> {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends with free reduction and merging of `t`-powers.
    pub fn push(&mut self, x: SigmaLetter<S>) {
        match (self.0.last_mut(), &x) {
            (Some(SigmaLetter::T(a)), SigmaLetter::T(b)) => {
                *a += b;
                if *a == 0 {
                    self.0.pop();
                }
            }
            (Some(last), SigmaLetter::Symbol { .. }) if *last == x.inv() => {
                self.0.pop();
            }
            _ => {
                if x != SigmaLetter::T(0) {
                    self.0.push(x)
                }
            }
        }
    }

    pub fn inverse(&self) -> SigmaWord<S> {
        SigmaWord(self.0.iter().rev().map(|x| x.inv()).collect())
    }

    /// Cyclic reduction in the free product.
    pub fn cyclically_reduced(&self) -> SigmaWord<S> {
        let mut v = self.0.clone();
        loop {
            if v.len() < 2 {
                break;
            }
            let last = v.len() - 1;
            match (&v[0], &v[last]) {
                (SigmaLetter::T(a), SigmaLetter::T(b)) => {
                    let s = a + b;
                    v.pop();
                    if s == 0 {
                        v.remove(0);
                    } else {
                        v[0] = SigmaLetter::T(s);
                        break;
                    }
                }
                (x, y) if *x == y.inv() => {
                    v.pop();
                    v.remove(0);
                }
                _ => break,
            }
        }
        SigmaWord(v)
    }

    /// Expansion into unit letters: `t^k` becomes `|k|` copies of `t^±1`.
    pub fn units(&self) -> Vec<SigmaLetter<S>> {
        let mut out = Vec::new();
        for x in &self.0 {
            match x {
                SigmaLetter::T(k) => {
                    out.extend(std::iter::repeat(SigmaLetter::T(k.signum())).take(k.unsigned_abs() as usize))
                }
                s => out.push(s.clone()),
            }
        }
        out
    }

    pub fn from_units(units: &[SigmaLetter<S>]) -> SigmaWord<S> {
        let mut w = SigmaWord::default();
        for x in units {
            w.push(x.clone());
        }
        w
    }

}

impl SigmaWord {
    pub fn format(&self, g: &CommutationGraph) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|x| match x {
                SigmaLetter::T(1) => "t".to_string(),
                SigmaLetter::T(k) => format!("t^{k}"),
                SigmaLetter::Symbol { rep, inverted } => {
                    let body = format_word(g, rep.word());
                    if *inverted {
                        format!("[{body}]^-1")
                    } else {
                        format!("[{body}]")
                    }
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// `lk(t)`; isolated `t` gives the empty set.
pub fn link_of(g: &CommutationGraph, t: Vertex) -> Result<VertexSet, HnnError> {
    if t >= g.len() {
        return Err(HnnError::UnknownVertex(t));
    }
    Ok(g.neighbours(t))
}

/// Reduced factorization of the element of `w`: the canonical minimal form
/// split at its `t`-letters.
pub fn hnn_factorize(g: &CommutationGraph, t: Vertex, w: &Word) -> Result<HnnWord, HnnError> {
    link_of(g, t)?;
    let nf = minimal_form(g, w);
    let mut chunks = vec![Vec::new()];
    let mut signs = Vec::new();
    for &l in nf.letters() {
        if l.v() == t {
            signs.push(if l.inverse { -1 } else { 1 });
            chunks.push(Vec::new());
        } else {
            chunks.last_mut().expect("nonempty").push(l);
        }
    }
    Ok(HnnWord {
        t,
        chunks: chunks
            .into_iter()
            .map(|c| NormalForm::trusted(Word(c)))
            .collect(),
        signs,
    })
}

pub fn t_length(h: &HnnWord) -> usize {
    h.t_length()
}

fn in_u(u: VertexSet, c: &NormalForm) -> bool {
    c.support().is_subset(u)
}

/// True iff `m ≤ 1`, or `gₘ g₀ ∉ U`, or `εₘ = ε₁`.
pub fn is_cyclically_reduced_hnn(g: &CommutationGraph, h: &HnnWord) -> Result<bool, HnnError> {
    let u = link_of(g, h.t)?;
    let m = h.signs.len();
    if m <= 1 || h.signs[0] == h.signs[m - 1] {
        return Ok(true);
    }
    let wrap = crate::words::multiply(g, &[h.chunks[m].word(), h.chunks[0].word()]);
    Ok(!in_u(u, &wrap))
}

/// Symbol for one chunk; `None` for chunks in `U`.
pub fn chunk_symbol(ctx: &ParabolicContext<'_>, chunk: &NormalForm) -> Option<SigmaLetter> {
    let d = ctx.double_coset_rep_geodesic(chunk.letters());
    if d.is_identity() {
        return None;
    }
    let dinv = minimal_form(ctx.graph, &d.word().inverse());
    let shortlex = |x: &NormalForm| (x.len(), x.letters().to_vec());
    Some(if shortlex(&d) <= shortlex(&dinv) {
        SigmaLetter::Symbol {
            rep: d,
            inverted: false,
        }
    } else {
        SigmaLetter::Symbol {
            rep: dinv,
            inverted: true,
        }
    })
}

/// The symbol word of `h`.
pub fn sigma(g: &CommutationGraph, h: &HnnWord) -> Result<SigmaWord, HnnError> {
    let ctx = ParabolicContext {
        graph: g,
        subset: link_of(g, h.t)?,
    };
    let mut out = SigmaWord::default();
    for (i, chunk) in h.chunks.iter().enumerate() {
        if i > 0 {
            out.push(SigmaLetter::T(h.signs[i - 1] as i64));
        }
        if let Some(sym) = chunk_symbol(&ctx, chunk) {
            out.push(sym);
        }
    }
    Ok(out)
}

fn require_clique_link(g: &CommutationGraph, t: Vertex) -> Result<VertexSet, HnnError> {
    let u = link_of(g, t)?;
    if !g.is_clique(u).expect("link lies in the graph") {
        return Err(HnnError::LinkNotClique);
    }
    Ok(u)
}

fn chunk_ok(g: &CommutationGraph, u: VertexSet, c: &NormalForm) -> bool {
    let supp = c.support();
    supp.is_subset(u) || in_maln_support(g, u, supp)
}

/// Every chunk lies in `U ∪ Maln_H(U)`.
pub fn is_t_thick(g: &CommutationGraph, h: &HnnWord) -> Result<bool, HnnError> {
    let u = require_clique_link(g, h.t)?;
    Ok(h.chunks.iter().all(|c| chunk_ok(g, u, c)))
}

/// [`is_t_thick`], cyclically reduced, and the wrap-around chunk `gₘ g₀` also qualifies.
pub fn is_cyclically_t_thick(g: &CommutationGraph, h: &HnnWord) -> Result<bool, HnnError> {
    let u = require_clique_link(g, h.t)?;
    if !is_t_thick(g, h)? || !is_cyclically_reduced_hnn(g, h)? {
        return Ok(false);
    }
    let m = h.signs.len();
    if m == 0 {
        return Ok(true);
    }
    let wrap = crate::words::multiply(g, &[h.chunks[m].word(), h.chunks[0].word()]);
    Ok(chunk_ok(g, u, &wrap))
}

/// Smallest period of a sequence (failure function).
pub fn smallest_period<T: PartialEq>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && s[i] != s[k] {
            k = fail[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i] = k;
    }
    n - fail[n - 1]
}

/// True iff the cyclic sequence is `q^k` for some `k ≥ 2`.
pub fn is_proper_power<T: PartialEq>(s: &[T]) -> bool {
    let p = smallest_period(s);
    p > 0 && p < s.len() && s.len() % p == 0
}

/// True iff the cyclically reduced symbol word is not a proper power.
pub fn sigma_is_root<S: Clone + PartialEq>(s: &SigmaWord<S>) -> bool {
    !is_proper_power(&s.cyclically_reduced().units())
}

pub fn is_t_root(g: &CommutationGraph, h: &HnnWord) -> Result<bool, HnnError> {
    Ok(sigma_is_root(&sigma(g, h)?))
}

/// A rotation of the root written as `a · b` with both parts uniquely positioned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniquePositionSplit {
    pub a: SigmaWord,
    pub b: SigmaWord,
    pub rotation: usize,
}

fn cyclic_occurrences<T: PartialEq>(cyc: &[T], pat: &[T]) -> usize {
    let n = cyc.len();
    (0..n)
        .filter(|&i| pat.iter().enumerate().all(|(j, x)| cyc[(i + j) % n] == *x))
        .count()
}

/// Finds a rotation and split point such that `a` and `b` occur exactly once
/// in the cyclic root and never in its inverse. Within a rotation a split
/// with `a` ending in a `t`-letter is preferred.
pub fn unique_position_factorization(root: &SigmaWord) -> Result<UniquePositionSplit, HnnError> {
    let units = root.cyclically_reduced().units();
    let inverse: Vec<SigmaLetter> = units.iter().rev().map(|x| x.inv()).collect();
    let n = units.len();
    if n < 2 || is_proper_power(&units) {
        return Err(HnnError::NoSplitFound);
    }
    let unique = |p: &[SigmaLetter]| {
        cyclic_occurrences(&units, p) == 1 && cyclic_occurrences(&inverse, p) == 0
    };
    for r in 0..n {
        let rot: Vec<SigmaLetter> = units[r..].iter().chain(&units[..r]).cloned().collect();
        let mut first = None;
        for k in 1..n {
            let (a, b) = rot.split_at(k);
            if unique(a) && unique(b) {
                if a[k - 1].is_t() {
                    first = Some(k);
                    break;
                }
                first.get_or_insert(k);
            }
        }
        if let Some(k) = first {
            return Ok(UniquePositionSplit {
                a: SigmaWord::from_units(&rot[..k]),
                b: SigmaWord::from_units(&rot[k..]),
                rotation: r,
            });
        }
    }
    Err(HnnError::NoSplitFound)
}
