//! Normal forms for elements of `H = ⟨a1, …, a_{n-1}⟩ ≤ C′_n`.
//!
//! In `C′_n` the vertices `a1 … a_{n-1}` form a cycle of length `n − 1`, so
//! `a_i` commutes with `a_{i±1}` (subscripts mod `n − 1`). A word is in
//! general normal form when it is freely reduced and has no factor
//! `a_{i+1}^ε a_{i-1}^β a_i^δ` with `β` any integer, zero included. At `n = 5`
//! the group `H` is `F(a1, a3) × F(a2, a4)` and the square normal form
//! `w1 w2`, with `w1` reduced over `{a2, a4}` and `w2` over `{a1, a3}`, is an
//! alternative.

use serde::{Deserialize, Serialize};

use super::CensusError;
use crate::words::{Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NfMode {
    General,
    Square,
}

impl NfMode {
    /// Square forms at `n = 5`, general forms otherwise.
    pub fn default_for(n: usize) -> NfMode {
        if n == 5 {
            NfMode::Square
        } else {
            NfMode::General
        }
    }
}

pub(crate) fn check_n(n: usize) -> Result<(), CensusError> {
    if n < 5 || n > 60 {
        return Err(CensusError::BadParameter(format!("n must lie in 5..=60, got {n}")));
    }
    Ok(())
}

fn next(n: usize, i: usize) -> usize {
    i % (n - 1) + 1
}

fn prev(n: usize, i: usize) -> usize {
    (i + n - 3) % (n - 1) + 1
}

/// Whether `x` may follow the general normal form `prefix`.
pub(crate) fn general_can_append(n: usize, prefix: &[Letter], x: Letter) -> bool {
    if prefix.last() == Some(&x.inv()) {
        return false;
    }
    let i = x.v();
    let p = prev(n, i);
    let mut j = prefix.len();
    while j > 0 && prefix[j - 1].v() == p {
        j -= 1;
    }
    !(j > 0 && prefix[j - 1].v() == next(n, i))
}

fn check_alphabet(n: usize, w: &Word) -> Result<(), CensusError> {
    match w.letters().iter().find(|l| l.v() == 0 || l.v() >= n) {
        Some(l) => Err(CensusError::BadAlphabet(l.v())),
        None => Ok(()),
    }
}

fn freely_reduced(w: &[Letter]) -> bool {
    w.windows(2).all(|p| p[0] != p[1].inv())
}

/// Normal form test for a word over `a1, …, a_{n-1}` (vertex indices of `C′_n`).
pub fn is_normal_form(n: usize, w: &Word, mode: NfMode) -> Result<bool, CensusError> {
    check_n(n)?;
    check_alphabet(n, w)?;
    let ls = w.letters();
    match mode {
        NfMode::General => Ok((0..ls.len()).all(|k| general_can_append(n, &ls[..k], ls[k]))),
        NfMode::Square => {
            if n != 5 {
                return Err(CensusError::BadParameter("square normal forms need n = 5".into()));
            }
            let split = ls.iter().position(|l| l.v() % 2 == 1).unwrap_or(ls.len());
            Ok(ls[split..].iter().all(|l| l.v() % 2 == 1) && freely_reduced(ls))
        }
    }
}

fn reduced_words(alphabet: &[usize], d: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..d {
        let mut next_frontier = Vec::new();
        for w in &frontier {
            for &v in alphabet {
                for inv in [false, true] {
                    let x = Letter::new(v, inv);
                    if w.last() != Some(&x.inv()) {
                        let mut w2 = w.clone();
                        w2.push(x);
                        next_frontier.push(w2);
                    }
                }
            }
        }
        out.extend(next_frontier.iter().cloned());
        frontier = next_frontier;
    }
    out
}

/// All normal forms of length at most `d`, ordered by length. Fails once
/// more than `budget` words would be produced.
pub fn enumerate_normal_forms(
    n: usize,
    d: usize,
    mode: NfMode,
    budget: usize,
) -> Result<Vec<Word>, CensusError> {
    check_n(n)?;
    let mut out: Vec<Word> = Vec::new();
    match mode {
        NfMode::Square => {
            if n != 5 {
                return Err(CensusError::BadParameter("square normal forms need n = 5".into()));
            }
            let even = reduced_words(&[2, 4], d);
            let odd = reduced_words(&[1, 3], d);
            for len in 0..=d {
                for w1 in &even {
                    if w1.len() > len {
                        continue;
                    }
                    for w2 in odd.iter().filter(|w2| w1.len() + w2.len() == len) {
                        out.push(Word(w1.iter().chain(w2).copied().collect()));
                        if out.len() > budget {
                            return Err(CensusError::BudgetExceeded);
                        }
                    }
                }
            }
        }
        NfMode::General => {
            let mut frontier: Vec<Vec<Letter>> = vec![Vec::new()];
            out.push(Word::empty());
            for _ in 0..d {
                let mut next_frontier = Vec::new();
                for w in &frontier {
                    for v in 1..n {
                        for inv in [false, true] {
                            let x = Letter::new(v, inv);
                            if general_can_append(n, w, x) {
                                let mut w2 = w.clone();
                                w2.push(x);
                                next_frontier.push(w2);
                            }
                        }
                    }
                }
                if out.len() + next_frontier.len() > budget {
                    return Err(CensusError::BudgetExceeded);
                }
                out.extend(next_frontier.iter().cloned().map(Word));
                frontier = next_frontier;
            }
        }
    }
    Ok(out)
}
