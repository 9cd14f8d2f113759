//! Words over `A ∪ A⁻¹`, geodesic reduction and canonical forms.
//!
//! Canonical forms are shortlex-least geodesics. Letters are ordered by
//! vertex index (declaration order), a generator before its inverse.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::graph::{CommutationGraph, Vertex, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("syntax error: {0}")]
    SyntaxError(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("zero exponent in `{0}`")]
    ZeroExponent(String),
    #[error("word is not cyclically minimal")]
    NotCyclicallyMinimal,
}

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub vertex: u16,
    pub inverse: bool,
}

impl Letter {
    pub fn new(vertex: Vertex, inverse: bool) -> Self {
        Letter {
            vertex: vertex as u16,
            inverse,
        }
    }

    pub fn pos(vertex: Vertex) -> Self {
        Letter::new(vertex, false)
    }

    pub fn neg(vertex: Vertex) -> Self {
        Letter::new(vertex, true)
    }

    #[inline]
    pub fn v(self) -> Vertex {
        self.vertex as usize
    }

    #[inline]
    pub fn inv(self) -> Self {
        Letter {
            vertex: self.vertex,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A finite sequence of letters. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    /// Set of vertices occurring in the word (not reduced first).
    pub fn letter_support(&self) -> VertexSet {
        self.0.iter().map(|l| l.v()).collect()
    }

    /// Exponent sum of vertex `v`.
    pub fn exponent_sum(&self, v: Vertex) -> i64 {
        self.0
            .iter()
            .filter(|l| l.v() == v)
            .map(|l| l.sign() as i64)
            .sum()
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Canonical geodesic representative of a group element.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm(Word);

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm(Word::empty())
    }

    /// Wraps a word already known to be canonical.
    pub(crate) fn trusted(word: Word) -> Self {
        NormalForm(word)
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0 .0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> VertexSet {
        self.0.letter_support()
    }
}

impl AsRef<Word> for NormalForm {
    fn as_ref(&self) -> &Word {
        &self.0
    }
}

/// `w = u⁻¹ · v · u` with `v` cyclically minimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicDecomposition {
    pub conjugator: NormalForm,
    pub core: NormalForm,
}

/// Parses whitespace-separated tokens `name` or `name^k`; `1` alone is the identity.
pub fn parse_word(text: &str, g: &CommutationGraph) -> Result<Word, WordError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(WordError::SyntaxError("empty word text".into()));
    }
    if tokens == ["1"] {
        return Ok(Word::empty());
    }
    let mut letters = Vec::new();
    for token in tokens {
        if token == "1" {
            return Err(WordError::SyntaxError(
                "`1` must appear alone".into(),
            ));
        }
        let (name, exp) = match token.split_once('^') {
            Some((name, exp)) => {
                let k: i64 = exp
                    .parse()
                    .map_err(|_| WordError::SyntaxError(format!("bad exponent in `{token}`")))?;
                (name, k)
            }
            None => (token, 1),
        };
        if exp == 0 {
            return Err(WordError::ZeroExponent(token.to_string()));
        }
        if name.is_empty() {
            return Err(WordError::SyntaxError(format!("missing name in `{token}`")));
        }
        let v = g
            .vertex(name)
            .map_err(|_| WordError::UnknownGenerator(name.to_string()))?;
        let l = Letter::new(v, exp < 0);
        letters.extend(std::iter::repeat(l).take(exp.unsigned_abs() as usize));
    }
    Ok(Word(letters))
}

/// Formats a word, grouping runs of one letter as `name^k`.
pub fn format_word(g: &CommutationGraph, w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    let letters = w.letters();
    while i < letters.len() {
        let l = letters[i];
        let mut j = i;
        while j < letters.len() && letters[j] == l {
            j += 1;
        }
        let k = (j - i) as i64 * l.sign() as i64;
        let name = g.name(l.v());
        parts.push(if k == 1 {
            name.to_string()
        } else {
            format!("{name}^{k}")
        });
        i = j;
    }
    parts.join(" ")
}

/// Displays a word against a graph.
pub struct Display<'a>(pub &'a CommutationGraph, pub &'a Word);

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(self.0, self.1))
    }
}

/// Appends `x` to a geodesic, cancelling against the rightmost `x⁻¹` that
/// commutes past everything after it.
#[inline]
pub(crate) fn push_reduced(g: &CommutationGraph, stack: &mut Vec<Letter>, x: Letter) {
    let xi = x.inv();
    for i in (0..stack.len()).rev() {
        let y = stack[i];
        if y == xi {
            stack.remove(i);
            return;
        }
        if !g.commute(y.v(), x.v()) {
            break;
        }
    }
    stack.push(x);
}

/// Some geodesic for `w`, not canonicalized.
pub fn geodesic(g: &CommutationGraph, w: &[Letter]) -> Vec<Letter> {
    let mut stack = Vec::with_capacity(w.len());
    for &x in w {
        push_reduced(g, &mut stack, x);
    }
    stack
}

/// Shortlex-least rearrangement of a geodesic.
pub(crate) fn canonical_order(g: &CommutationGraph, geo: &[Letter]) -> Vec<Letter> {
    let mut remaining: Vec<Letter> = geo.to_vec();
    let mut out = Vec::with_capacity(geo.len());
    while !remaining.is_empty() {
        // Available letters commute with every remaining letter before them.
        let mut best: Option<usize> = None;
        let mut blocked = VertexSet::EMPTY;
        for (i, &l) in remaining.iter().enumerate() {
            let available = blocked.iter().all(|b| g.commute(b, l.v()));
            if available && best.map_or(true, |b| l < remaining[b]) {
                best = Some(i);
            }
            blocked.insert(l.v());
        }
        let i = best.expect("some letter is always available");
        out.push(remaining.remove(i));
    }
    out
}

/// Canonical minimal form of `w`.
pub fn minimal_form(g: &CommutationGraph, w: &Word) -> NormalForm {
    NormalForm(Word(canonical_order(g, &geodesic(g, &w.0))))
}

/// Canonical form of a product of words.
pub fn multiply(g: &CommutationGraph, words: &[&Word]) -> NormalForm {
    let mut stack = Vec::new();
    for w in words {
        for &x in &w.0 {
            push_reduced(g, &mut stack, x);
        }
    }
    NormalForm(Word(canonical_order(g, &stack)))
}

pub fn equal(g: &CommutationGraph, w1: &Word, w2: &Word) -> bool {
    minimal_form(g, w1) == minimal_form(g, w2)
}

/// `supp` of the group element.
pub fn support(g: &CommutationGraph, w: &Word) -> VertexSet {
    Word(geodesic(g, &w.0)).letter_support()
}

/// Distinct letters `y` with some occurrence preceded only by letters commuting with `y`.
pub fn left_divisors(g: &CommutationGraph, geo: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    let mut blocked = VertexSet::EMPTY;
    for &l in geo {
        if blocked.iter().all(|b| g.commute(b, l.v())) && !out.contains(&l) {
            out.push(l);
        }
        blocked.insert(l.v());
    }
    out.sort();
    out
}

pub fn right_divisors(g: &CommutationGraph, geo: &[Letter]) -> Vec<Letter> {
    let rev: Vec<Letter> = geo.iter().rev().copied().collect();
    left_divisors(g, &rev)
}

/// Removes one occurrence of the left divisor `y`.
fn remove_left(g: &CommutationGraph, geo: &mut Vec<Letter>, y: Letter) {
    let mut blocked = VertexSet::EMPTY;
    for i in 0..geo.len() {
        if geo[i] == y && blocked.iter().all(|b| g.commute(b, y.v())) {
            geo.remove(i);
            return;
        }
        blocked.insert(geo[i].v());
    }
    unreachable!("letter is not a left divisor");
}

fn remove_right(g: &CommutationGraph, geo: &mut Vec<Letter>, y: Letter) {
    let mut blocked = VertexSet::EMPTY;
    for i in (0..geo.len()).rev() {
        if geo[i] == y && blocked.iter().all(|b| g.commute(b, y.v())) {
            geo.remove(i);
            return;
        }
        blocked.insert(geo[i].v());
    }
    unreachable!("letter is not a right divisor");
}

fn wrap_cancel(g: &CommutationGraph, geo: &[Letter]) -> Option<Letter> {
    let right = right_divisors(g, geo);
    left_divisors(g, geo)
        .into_iter()
        .find(|y| right.contains(&y.inv()))
}

pub fn is_cyclically_minimal(g: &CommutationGraph, w: &Word) -> bool {
    wrap_cancel(g, &geodesic(g, &w.0)).is_none()
}

/// Splits `w = u⁻¹ v u` with `v` cyclically minimal and `l(w) = 2 l(u) + l(v)`.
pub fn cyclic_reduce(g: &CommutationGraph, w: &Word) -> CyclicDecomposition {
    let mut core = geodesic(g, &w.0);
    // w = y · w' · y⁻¹ gives u = u' · y⁻¹
    let mut peeled: Vec<Letter> = Vec::new();
    while let Some(y) = wrap_cancel(g, &core) {
        remove_left(g, &mut core, y);
        remove_right(g, &mut core, y.inv());
        peeled.push(y.inv());
    }
    peeled.reverse();
    CyclicDecomposition {
        conjugator: minimal_form(g, &Word(peeled)),
        core: NormalForm(Word(canonical_order(g, &core))),
    }
}

/// Factors a cyclically minimal word along complement components of its support.
pub fn block_decomposition(
    g: &CommutationGraph,
    v: &Word,
) -> Result<Vec<NormalForm>, WordError> {
    if !is_cyclically_minimal(g, v) {
        return Err(WordError::NotCyclicallyMinimal);
    }
    let nf = minimal_form(g, v);
    let components = g
        .complement_components(nf.support())
        .expect("support lies in the graph");
    Ok(components
        .into_iter()
        .map(|c| {
            let part: Word = nf.letters().iter().copied().filter(|l| c.contains(l.v())).collect();
            minimal_form(g, &part)
        })
        .collect())
}

/// Canonical forms reachable from a cyclically minimal `v` by moving a left divisor to the end.
pub fn cyclic_class(g: &CommutationGraph, v: &NormalForm) -> HashSet<NormalForm> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(v.clone());
    queue.push_back(v.clone());
    while let Some(cur) = queue.pop_front() {
        for y in left_divisors(g, cur.letters()) {
            let mut rest = cur.letters().to_vec();
            remove_left(g, &mut rest, y);
            rest.push(y);
            let next = NormalForm(Word(canonical_order(g, &rest)));
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

pub fn conjugate_test(g: &CommutationGraph, w1: &Word, w2: &Word) -> bool {
    let a = cyclic_reduce(g, w1).core;
    let b = cyclic_reduce(g, w2).core;
    if a.len() != b.len() || a.support() != b.support() {
        return false;
    }
    let mut ca = a.letters().to_vec();
    let mut cb = b.letters().to_vec();
    ca.sort();
    cb.sort();
    if ca != cb {
        return false;
    }
    cyclic_class(g, &a).contains(&b)
}
