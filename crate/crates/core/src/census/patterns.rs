//! Exact type (ii) tallies without visiting every tuple.
//!
//! Thickness of a chunk depends only on its double coset, and whether the
//! symbol word is a proper power depends only on which positions carry equal
//! or mutually inverse symbols. So the tuples are grouped by that equality
//! pattern; the number of symbol assignments realising a pattern exactly is
//! obtained by Möbius inversion over coarsenings of its blocks.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use super::composed::{candidates, signed, tally_lower_strata, Composition, Convention, Tally};
use super::tables::Tables;
use super::CensusError;
use crate::hnn::{sigma_is_root, SigmaLetter, SigmaWord};

/// Largest `k` handled by pattern counting.
pub const MAX_K: usize = 6;

/// Per-position weights: trivial chunks, then per symbol `[positive, inverted]`.
struct Weights {
    trivial: u128,
    symbols: Vec<[u128; 2]>,
}

fn weights(tables: &Tables, idx: &[usize], thick_only: bool) -> Weights {
    let mut w = Weights {
        trivial: 0,
        symbols: vec![[0, 0]; tables.symbols.len()],
    };
    for &i in idx {
        let c = &tables.lh[i];
        if thick_only && !c.thick {
            continue;
        }
        match c.symbol {
            None => w.trivial += 1,
            Some((id, inv)) => w.symbols[id as usize][inv as usize] += 1,
        }
    }
    w
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Label {
    Trivial,
    Block(u8, bool),
}

/// Label sequences of length `r`: blocks numbered by first appearance, each
/// block's first occurrence uninverted.
fn label_sequences(r: usize) -> Vec<Vec<Label>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(r: usize, blocks: u8, cur: &mut Vec<Label>, out: &mut Vec<Vec<Label>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        cur.push(Label::Trivial);
        rec(r, blocks, cur, out);
        cur.pop();
        for b in 0..blocks {
            for inv in [false, true] {
                cur.push(Label::Block(b, inv));
                rec(r, blocks, cur, out);
                cur.pop();
            }
        }
        cur.push(Label::Block(blocks, false));
        rec(r, blocks + 1, cur, out);
        cur.pop();
    }
    rec(r, 0, &mut cur, &mut out);
    out
}

/// Set partitions of `0..m`, as class index per element.
fn set_partitions(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(m: usize, classes: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for c in 0..=classes {
            cur.push(c);
            rec(m, classes.max(c + 1), cur, out);
            cur.pop();
        }
    }
    rec(m, 0, &mut cur, &mut out);
    out
}

fn factorial(n: usize) -> i128 {
    (1..=n as i128).product()
}

/// Number of position-wise choices realising `labels` exactly.
fn exact_weight(labels: &[Label], lead: &Weights, rest: &Weights) -> Result<BigInt, CensusError> {
    let at = |j: usize| if j == 0 { lead } else { rest };
    let mut trivial = BigInt::from(1);
    let mut blocks: Vec<Vec<(usize, bool)>> = Vec::new();
    for (j, l) in labels.iter().enumerate() {
        match *l {
            Label::Trivial => trivial *= at(j).trivial,
            Label::Block(b, inv) => {
                if b as usize == blocks.len() {
                    blocks.push(Vec::new());
                }
                blocks[b as usize].push((j, inv));
            }
        }
    }
    if blocks.is_empty() {
        return Ok(trivial);
    }
    let nsym = lead.symbols.len();
    let overflow = || CensusError::BudgetExceeded;
    // F_B(x): assignments of symbol x to block B, either global orientation.
    let f: Vec<Vec<u128>> = blocks
        .iter()
        .map(|members| {
            (0..nsym)
                .map(|x| {
                    let mut total = 0u128;
                    for o in [false, true] {
                        let mut p = 1u128;
                        for &(j, inv) in members {
                            p = p.checked_mul(at(j).symbols[x][(inv ^ o) as usize]).ok_or_else(overflow)?;
                        }
                        total = total.checked_add(p).ok_or_else(overflow)?;
                    }
                    Ok(total)
                })
                .collect::<Result<Vec<u128>, CensusError>>()
        })
        .collect::<Result<_, _>>()?;
    let nb = blocks.len();
    // h(S) = Σ_x Π_{B ∈ S} F_B(x).
    let mut h = vec![BigInt::zero(); 1 << nb];
    for (s, slot) in h.iter_mut().enumerate().skip(1) {
        let mut acc = 0u128;
        for x in 0..nsym {
            let mut p = 1u128;
            for (b, fb) in f.iter().enumerate() {
                if s >> b & 1 == 1 {
                    p = p.checked_mul(fb[x]).ok_or_else(overflow)?;
                    if p == 0 {
                        break;
                    }
                }
            }
            acc = acc.checked_add(p).ok_or_else(overflow)?;
        }
        *slot = BigInt::from(acc);
    }
    let mut exact = BigInt::zero();
    for part in set_partitions(nb) {
        let classes = part.iter().max().map_or(0, |m| m + 1);
        let mut masks = vec![0usize; classes];
        for (b, &c) in part.iter().enumerate() {
            masks[c] |= 1 << b;
        }
        let mut term = BigInt::from(1);
        for &m in &masks {
            let size = m.count_ones() as usize;
            let mu = if size % 2 == 1 { factorial(size - 1) } else { -factorial(size - 1) };
            term *= &h[m] * mu;
        }
        exact += term;
    }
    Ok(exact * trivial)
}

fn is_root(labels: &[Label], exponents: &[i64]) -> bool {
    let mut s = SigmaWord::<u8>::default();
    for (l, &e) in labels.iter().zip(exponents) {
        if let Label::Block(b, inverted) = *l {
            s.push(SigmaLetter::Symbol { rep: b, inverted });
        }
        s.push(SigmaLetter::T(e));
    }
    sigma_is_root(&s)
}

/// Exact tallies over `L(d, k)` by pattern counting.
pub fn count_composed(tables: &Tables, k: usize, conv: Convention) -> Result<Tally, CensusError> {
    if k > MAX_K {
        return Err(CensusError::BudgetExceeded);
    }
    let mut tally = Tally::default();
    tally_lower_strata(tables, k, &mut tally);
    let (lead_idx, rest_idx) = candidates(tables, conv);
    let lead_all = weights(tables, &lead_idx, false);
    let rest_all = weights(tables, &rest_idx, false);
    let lead_thick = weights(tables, &lead_idx, true);
    let rest_thick = weights(tables, &rest_idx, true);
    let mut n = BigInt::zero();
    let mut thick = BigInt::zero();
    let mut roots = BigInt::zero();
    let mut zy = BigInt::zero();
    for r in 1..=k {
        let labelled: Vec<(Vec<Label>, BigInt, BigInt)> = label_sequences(r)
            .into_iter()
            .map(|ls| {
                let a = exact_weight(&ls, &lead_all, &rest_all)?;
                let t = exact_weight(&ls, &lead_thick, &rest_thick)?;
                Ok((ls, a, t))
            })
            .collect::<Result<_, CensusError>>()?;
        let labelled: Vec<_> = labelled.into_iter().filter(|(_, a, _)| !a.is_zero()).collect();
        for l in r..=k {
            for comp in Composition::into_parts(l, r) {
                for exponents in signed(&comp.parts) {
                    for (ls, a, t) in &labelled {
                        n += a;
                        thick += t;
                        if is_root(ls, &exponents) {
                            roots += a;
                            zy += t;
                        }
                    }
                }
            }
        }
    }
    let big = |x: BigInt| -> BigUint {
        debug_assert!(!x.is_negative());
        x.to_biguint().expect("counts are nonnegative")
    };
    let (n, thick, roots, zy) = (big(n), big(thick), big(roots), big(zy));
    tally.z1 += &n;
    tally.z3 += &n;
    tally.z2 += &thick;
    tally.z4 += &roots;
    tally.zy += &zy;
    tally.powers_ii = &n - &roots;
    tally.thick_ii = thick;
    tally.l_ii = n;
    Ok(tally)
}
