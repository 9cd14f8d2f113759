//! Corpus-driven checks of the HNN layer on `C′_5` with `t` the chord-free vertex.

use std::collections::HashSet;

use pcgroup::census::{enumerate_normal_forms, NfMode};
use pcgroup::hnn::{
    hnn_factorize, is_cyclically_reduced_hnn, is_cyclically_t_thick, is_t_root, sigma, HnnWord,
    SigmaLetter,
};
use pcgroup::words::{equal, minimal_form};
use pcgroup::{CommutationGraph, Letter, NormalForm, Word};

use super::subgroup_ball;

pub const T: usize = 0;

pub fn chorded() -> CommutationGraph {
    CommutationGraph::cycle_with_chord(5).unwrap()
}

/// A unit is an `H`-chunk or a single `t^±1`.
#[derive(Clone, Debug, PartialEq)]
pub enum Unit {
    Chunk(Word),
    T(bool),
}

fn inverse_units(units: &[Unit]) -> Vec<Unit> {
    units
        .iter()
        .rev()
        .map(|u| match u {
            Unit::Chunk(w) => Unit::Chunk(w.inverse()),
            Unit::T(inv) => Unit::T(!inv),
        })
        .collect()
}

pub fn units_word(units: &[Unit]) -> Word {
    let mut out = Vec::new();
    for u in units {
        match u {
            Unit::Chunk(w) => out.extend_from_slice(&w.0),
            Unit::T(inv) => out.push(Letter::new(T, *inv)),
        }
    }
    Word(out)
}

fn rotations(units: &[Unit]) -> Vec<Vec<Unit>> {
    (0..units.len()).map(|j| units[j..].iter().chain(&units[..j]).cloned().collect()).collect()
}

/// `s = h₀ t^ε₁ ⋯ h_{m−1} t^ε_m` for `m ≤ max_t` and `h_i ∈ L_H(d)`.
pub fn corpus(max_t: usize, d: usize) -> Vec<Vec<Unit>> {
    let hs = enumerate_normal_forms(5, d, NfMode::Square, 1 << 20).unwrap();
    let mut out: Vec<Vec<Unit>> = vec![Vec::new()];
    let mut all = Vec::new();
    for _ in 0..max_t {
        let mut next = Vec::new();
        for prefix in &out {
            for h in &hs {
                for inv in [false, true] {
                    let mut s = prefix.clone();
                    s.push(Unit::Chunk(h.clone()));
                    s.push(Unit::T(inv));
                    next.push(s);
                }
            }
        }
        all.extend(next.iter().cloned());
        out = next;
    }
    all
}

pub fn formal(g: &CommutationGraph, units: &[Unit]) -> HnnWord {
    let mut chunks = vec![NormalForm::identity()];
    let mut signs = Vec::new();
    for u in units {
        match u {
            Unit::Chunk(w) => *chunks.last_mut().unwrap() = minimal_form(g, w),
            Unit::T(inv) => {
                signs.push(if *inv { -1 } else { 1 });
                chunks.push(NormalForm::identity());
            }
        }
    }
    HnnWord::formal(T, chunks, signs).unwrap()
}

/// Reduced, cyclically reduced, cyclically `t`-thick `t`-roots.
pub fn admissible(g: &CommutationGraph, units: &[Unit]) -> bool {
    let h = formal(g, units);
    hnn_factorize(g, T, &units_word(units)).unwrap().t_length() == h.t_length()
        && is_cyclically_reduced_hnn(g, &h).unwrap()
        && is_cyclically_t_thick(g, &h).unwrap()
        && is_t_root(g, &h).unwrap()
}

fn sigma_of(g: &CommutationGraph, w: &Word) -> pcgroup::hnn::SigmaWord {
    sigma(g, &hnn_factorize(g, T, w).unwrap()).unwrap()
}

/// Rotations of `s^n` and `s^{−n}` with equal symbol words, sharing a
/// nonempty unit prefix `p`, leave equal remainders.
pub fn check_periodic_position(max_t: usize, max_n: usize) -> Result<usize, String> {
    let g = chorded();
    let mut checked = 0;
    for s in corpus(max_t, 2).into_iter().filter(|s| admissible(&g, s)) {
        for n in 1..=max_n {
            let r: Vec<Unit> = (0..n).flat_map(|_| s.iter().cloned()).collect();
            let mut rots = rotations(&r);
            rots.extend(rotations(&inverse_units(&r)));
            let sigmas: Vec<_> = rots.iter().map(|x| sigma_of(&g, &units_word(x))).collect();
            for i in 0..rots.len() {
                for j in 0..rots.len() {
                    if sigmas[i] != sigmas[j] {
                        continue;
                    }
                    let p = rots[i].iter().zip(&rots[j]).take_while(|(a, b)| a == b).count();
                    if p == 0 || i == j {
                        continue;
                    }
                    let (q1, q2) = (units_word(&rots[i][p..]), units_word(&rots[j][p..]));
                    if !equal(&g, &q1, &q2) {
                        return Err(format!("s={:?} n={n}: rotations {i} and {j}", units_word(&s).0));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

fn is_rotation<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|j| a[j..].iter().chain(&a[..j]).eq(b.iter())))
}

/// Conjugating a unit rotation by `u ∈ U` permutes the cyclic symbol word.
pub fn check_sigma_stability(max_t: usize) -> Result<usize, String> {
    let g = chorded();
    let u = g.neighbours(T);
    let us = subgroup_ball(&g, u, 2);
    let mut checked = 0;
    for s in corpus(max_t, 2) {
        let h = formal(&g, &s);
        if hnn_factorize(&g, T, &units_word(&s)).unwrap().t_length() != h.t_length()
            || !is_cyclically_reduced_hnn(&g, &h).unwrap()
        {
            continue;
        }
        let base = sigma(&g, &h).unwrap().cyclically_reduced().units();
        for rot in rotations(&s) {
            for x in &us {
                let w = x.inverse().concat(&units_word(&rot)).concat(x);
                let got = sigma_of(&g, &w).cyclically_reduced().units();
                if !is_rotation(&base, &got) {
                    return Err(format!("s={:?} u={:?}", units_word(&s).0, x.0));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// `t`-roots are not proper powers in the group, by search over all bases
/// of length at most `|s|`.
pub fn check_roots_not_powers(max_t: usize, d: usize) -> Result<usize, String> {
    let g = chorded();
    let roots: Vec<NormalForm> = corpus(max_t, d)
        .into_iter()
        .filter(|s| admissible(&g, s))
        .map(|s| minimal_form(&g, &units_word(&s)))
        .collect();
    let longest = roots.iter().map(NormalForm::len).max().unwrap_or(0);
    let mut powers: HashSet<NormalForm> = HashSet::new();
    let mut frontier = vec![NormalForm::identity()];
    let mut seen: HashSet<NormalForm> = frontier.iter().cloned().collect();
    let letters: Vec<Letter> = (0..g.len()).flat_map(|v| [Letter::new(v, false), Letter::new(v, true)]).collect();
    for _ in 0..longest {
        let mut next = Vec::new();
        for x in &frontier {
            for &l in &letters {
                let y = minimal_form(&g, &x.word().concat(&Word::letter(l)));
                if y.len() == x.len() + 1 && seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        for x in &next {
            for k in 2..=longest {
                let p = minimal_form(&g, &x.word().pow(k));
                if p.len() <= longest {
                    powers.insert(p);
                }
            }
        }
        frontier = next;
    }
    for r in &roots {
        if powers.contains(r) {
            return Err(format!("root {:?} is a proper power", r.letters()));
        }
    }
    Ok(roots.len())
}

/// Repeating a chunk pattern with nontrivial symbols never gives a root.
pub fn check_repeated_patterns(max_t: usize) -> Result<usize, String> {
    let g = chorded();
    let mut checked = 0;
    for s in corpus(max_t, 1) {
        let h = formal(&g, &s);
        if sigma(&g, &h).unwrap().cyclically_reduced().is_empty() {
            continue;
        }
        for k in 2..=3 {
            let r: Vec<Unit> = (0..k).flat_map(|_| s.iter().cloned()).collect();
            if is_t_root(&g, &formal(&g, &r)).unwrap() {
                return Err(format!("{:?}^{k} reported as a root", units_word(&s).0));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

pub fn sigma_symbols(s: &pcgroup::hnn::SigmaWord) -> usize {
    s.0.iter().filter(|x| matches!(x, SigmaLetter::Symbol { .. })).count()
}

/// Inserting the trivial word `t^ε u t^{−ε} u⁻¹` anywhere keeps the `t`-length.
pub fn check_t_length_class(max: usize) -> Result<usize, String> {
    let g = chorded();
    let us = subgroup_ball(&g, g.neighbours(T), 1);
    let mut checked = 0;
    for w in super::all_words(&super::alphabet(&g), max) {
        let base = hnn_factorize(&g, T, &w).unwrap().t_length();
        for at in 0..=w.len() {
            for u in &us {
                for inv in [false, true] {
                    let t = Word::letter(Letter::new(T, inv));
                    let ins = Word(w.0[..at].to_vec())
                        .concat(&t)
                        .concat(u)
                        .concat(&t.inverse())
                        .concat(&u.inverse())
                        .concat(&Word(w.0[at..].to_vec()));
                    if hnn_factorize(&g, T, &ins).unwrap().t_length() != base {
                        return Err(format!("word {:?} at {at}", w.0));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}
