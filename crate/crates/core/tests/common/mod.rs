//! Brute-force oracles shared by the integration tests and the acceptance run.
//!
//! Nothing here calls the library's reduction code. Elements are keyed by a
//! naive cancellation loop followed by Cartier-Foata layering, which is a
//! normal form for the trace monoid of reduced words.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use pcgroup::cosets::{double_coset_rep, in_maln, strip_divisors};
use pcgroup::words::{conjugate_test, minimal_form, multiply};
use pcgroup::{CommutationGraph, Letter, VertexSet, Word};

pub type Key = Vec<Vec<Letter>>;

pub fn graph(vertices: &[&str], edges: &[(&str, &str)]) -> CommutationGraph {
    CommutationGraph::build(vertices, edges).unwrap()
}

/// Twelve small graphs covering paths, cycles, a chorded cycle, a star,
/// complete and edgeless graphs.
pub fn catalog() -> Vec<(&'static str, CommutationGraph)> {
    vec![
        ("K1", graph(&["a"], &[])),
        ("N2", graph(&["a", "b"], &[])),
        ("P3", graph(&["a", "b", "c"], &[("a", "b"), ("b", "c")])),
        ("K3", graph(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")])),
        ("P4", graph(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")])),
        ("C4", graph(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])),
        (
            "C4'",
            graph(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c")]),
        ),
        ("K1,3", graph(&["a", "b", "c", "d"], &[("a", "b"), ("a", "c"), ("a", "d")])),
        ("N4", graph(&["a", "b", "c", "d"], &[])),
        (
            "K4",
            graph(
                &["a", "b", "c", "d"],
                &[("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")],
            ),
        ),
        ("C5", CommutationGraph::cycle(5).unwrap()),
        ("C'5", CommutationGraph::cycle_with_chord(5).unwrap()),
    ]
}

pub fn alphabet(g: &CommutationGraph) -> Vec<Letter> {
    (0..g.len()).flat_map(|v| [Letter::new(v, false), Letter::new(v, true)]).collect()
}

/// Every word of length at most `max` over `letters`, shortest first.
pub fn all_words(letters: &[Letter], max: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::with_capacity(frontier.len() * letters.len());
        for w in &frontier {
            for &x in letters {
                let mut w2: Vec<Letter> = w.clone();
                w2.push(x);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned().map(Word));
        frontier = next;
    }
    out
}

/// Removes `x … x⁻¹` pairs whose intermediate letters all commute with `x`
/// until none is left.
pub fn naive_reduce(g: &CommutationGraph, w: &[Letter]) -> Vec<Letter> {
    let mut w = w.to_vec();
    'outer: loop {
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[j] == w[i].inv() {
                    w.remove(j);
                    w.remove(i);
                    continue 'outer;
                }
                if !g.adjacent(w[i].v(), w[j].v()) {
                    break;
                }
            }
        }
        return w;
    }
}

/// Cartier-Foata layers of a reduced word, each layer sorted.
pub fn foata(g: &CommutationGraph, w: &[Letter]) -> Key {
    let mut rest = w.to_vec();
    let mut layers = Vec::new();
    while !rest.is_empty() {
        let mut layer = Vec::new();
        let mut keep = Vec::new();
        for (i, &x) in rest.iter().enumerate() {
            if rest[..i].iter().all(|y| g.adjacent(y.v(), x.v())) {
                layer.push(x);
            } else {
                keep.push(x);
            }
        }
        layer.sort();
        layers.push(layer);
        rest = keep;
    }
    layers
}

pub fn key(g: &CommutationGraph, w: &[Letter]) -> Key {
    foata(g, &naive_reduce(g, w))
}

pub fn key_len(k: &Key) -> usize {
    k.iter().map(Vec::len).sum()
}

pub fn flatten(k: &Key) -> Vec<Letter> {
    k.iter().flatten().copied().collect()
}

/// Cayley-graph distances from the identity, out to `radius`.
pub fn ball(g: &CommutationGraph, radius: usize) -> HashMap<Key, usize> {
    let letters = alphabet(g);
    let mut dist = HashMap::new();
    dist.insert(Key::new(), 0);
    let mut queue = VecDeque::from([Key::new()]);
    while let Some(k) = queue.pop_front() {
        let d = dist[&k];
        if d == radius {
            continue;
        }
        let base = flatten(&k);
        for &x in &letters {
            let mut w = base.clone();
            w.push(x);
            let k2 = key(g, &w);
            if !dist.contains_key(&k2) {
                dist.insert(k2.clone(), d + 1);
                queue.push_back(k2);
            }
        }
    }
    dist
}

/// Elements of `⟨B⟩` within `radius`, as reduced words.
pub fn subgroup_ball(g: &CommutationGraph, b: VertexSet, radius: usize) -> Vec<Word> {
    let letters: Vec<Letter> = alphabet(g).into_iter().filter(|l| b.contains(l.v())).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for w in all_words(&letters, radius) {
        if seen.insert(key(g, &w.0)) {
            out.push(w);
        }
    }
    out
}

/// Representatives of the distinct elements spelled by words of length at most `max`.
pub fn distinct_elements(g: &CommutationGraph, letters: &[Letter], max: usize) -> Vec<Word> {
    let mut seen = HashSet::new();
    all_words(letters, max)
        .into_iter()
        .filter(|w| seen.insert(key(g, &w.0)))
        .collect()
}

pub fn cliques(g: &CommutationGraph) -> Vec<VertexSet> {
    (1u64..1 << g.len())
        .map(VertexSet::from_bits)
        .filter(|s| g.is_clique(*s).unwrap())
        .collect()
}

fn in_subgroup(g: &CommutationGraph, b: VertexSet, w: &[Letter]) -> bool {
    naive_reduce(g, w).iter().all(|l| b.contains(l.v()))
}

/// Geodesic length against BFS distance for every word of length at most `max`.
pub fn check_geodesics(g: &CommutationGraph, max: usize) -> Result<usize, String> {
    let dist = ball(g, max);
    let words = all_words(&alphabet(g), max);
    for w in &words {
        let nf = minimal_form(g, w);
        let k = key(g, &w.0);
        if nf.len() != dist[&k] || key(g, nf.letters()) != k {
            return Err(format!("word {:?}: length {} vs distance {}", w.0, nf.len(), dist[&k]));
        }
    }
    Ok(words.len())
}

/// Double coset representatives on `C′_5` with `Y = lk(t) = {a1, a4}`:
/// minimal length, unique minimum and two-sided invariance.
pub fn check_double_cosets(max: usize, side: usize, shift: usize) -> Result<usize, String> {
    let g = CommutationGraph::cycle_with_chord(5).unwrap();
    let y = g.vertex_set(&["a1", "a4"]).unwrap();
    let units = subgroup_ball(&g, y, side);
    let shifts = subgroup_ball(&g, y, shift);
    let elements = distinct_elements(&g, &alphabet(&g), max);
    for w in &elements {
        let d = double_coset_rep(&g, y, w);
        let mut best = usize::MAX;
        let mut minima: HashSet<Key> = HashSet::new();
        for u in &units {
            for v in &units {
                let p = u.concat(w).concat(v);
                let k = key(&g, &p.0);
                let l = key_len(&k);
                if l < best {
                    best = l;
                    minima.clear();
                }
                if l == best {
                    minima.insert(k);
                }
            }
        }
        if d.len() != best || minima.len() != 1 || !minima.contains(&key(&g, d.letters())) {
            return Err(format!("word {:?}: rep length {} vs minimum {best}", w.0, d.len()));
        }
        let s = strip_divisors(&g, y, w);
        let back = multiply(&g, &[s.left.word(), s.core.word(), s.right.word()]);
        if back != minimal_form(&g, w) || s.left.len() + s.core.len() + s.right.len() != minimal_form(&g, w).len() {
            return Err(format!("word {:?}: stripping does not recompose", w.0));
        }
        for u in &shifts {
            for v in &shifts {
                if double_coset_rep(&g, y, &u.concat(w).concat(v)) != d {
                    return Err(format!("word {:?}: rep changes under U-multiplication", w.0));
                }
            }
        }
    }
    Ok(elements.len())
}

/// `in_maln` against `w⁻¹ v w ∉ ⟨B⟩` for all nontrivial `v ∈ ⟨B⟩` of length
/// at most `radius`, over every clique `B` of `g`.
pub fn check_maln(g: &CommutationGraph, max: usize, radius: usize) -> Result<usize, String> {
    let elements = distinct_elements(g, &alphabet(g), max);
    let mut checked = 0;
    for b in cliques(g) {
        let vs: Vec<Word> = subgroup_ball(g, b, radius).into_iter().filter(|v| !v.is_empty()).collect();
        for w in &elements {
            let direct = !in_subgroup(g, b, &w.0)
                && vs.iter().all(|v| !in_subgroup(g, b, &w.inverse().concat(v).concat(w).0));
            let got = in_maln(g, b, w).map_err(|e| e.to_string())?;
            if got != direct {
                return Err(format!("B={b:?} word {:?}: in_maln {got}, direct {direct}", w.0));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Conjugacy classes of the elements of length at most `max`, found by
/// conjugating with generators while staying within length `bound`.
pub fn conjugacy_classes(g: &CommutationGraph, max: usize, bound: usize) -> (Vec<Word>, Vec<usize>) {
    let letters = alphabet(g);
    let elements = distinct_elements(g, &letters, max);
    let index: HashMap<Key, usize> =
        elements.iter().enumerate().map(|(i, w)| (key(g, &w.0), i)).collect();
    let mut class = vec![usize::MAX; elements.len()];
    for start in 0..elements.len() {
        if class[start] != usize::MAX {
            continue;
        }
        let k0 = key(g, &elements[start].0);
        let mut seen = HashSet::from([k0.clone()]);
        let mut queue = VecDeque::from([k0]);
        while let Some(k) = queue.pop_front() {
            if let Some(&i) = index.get(&k) {
                class[i] = start;
            }
            let base = flatten(&k);
            for &x in &letters {
                let mut w = vec![x.inv()];
                w.extend(&base);
                w.push(x);
                let k2 = key(g, &w);
                if key_len(&k2) <= bound && seen.insert(k2.clone()) {
                    queue.push_back(k2);
                }
            }
        }
    }
    (elements, class)
}

fn exponent_vector(g: &CommutationGraph, w: &Word) -> Vec<i64> {
    (0..g.len()).map(|v| w.exponent_sum(v)).collect()
}

/// `conjugate_test` against the bounded orbit oracle. Pairs sharing an
/// exponent-sum vector are all compared; other pairs are sampled.
pub fn check_conjugacy(g: &CommutationGraph, max: usize) -> Result<usize, String> {
    let (elements, class) = conjugacy_classes(g, max, max + 2);
    let mut buckets: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    for (i, w) in elements.iter().enumerate() {
        buckets.entry(exponent_vector(g, w)).or_default().push(i);
    }
    let mut checked = 0;
    let mut compare = |i: usize, j: usize| -> Result<(), String> {
        let got = conjugate_test(g, &elements[i], &elements[j]);
        let want = class[i] == class[j];
        checked += 1;
        if got != want {
            return Err(format!("{:?} vs {:?}: test {got}, orbit {want}", elements[i].0, elements[j].0));
        }
        Ok(())
    };
    for members in buckets.values() {
        for &i in members {
            for &j in members {
                compare(i, j)?;
            }
        }
    }
    let n = elements.len();
    for i in 0..n {
        compare(i, (i * 7 + 3) % n)?;
    }
    Ok(checked)
}
pub mod hnn_checks;
pub mod census_checks;
