//! Census checks against closed forms and independent enumerations.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use pcgroup::census::formulas::{self, geometric_total, t_power_bound};
use pcgroup::census::{
    bound_checks, count_composed, enumerate_composed, enumerate_lu, is_normal_form, Convention, NfMode, Tables,
};
use pcgroup::{CommutationGraph, Letter, Word};

use super::{ball, key, Key};

/// Selected convention for the composed-word formulas.
pub const CONVENTION: Convention = Convention::AllowTrivial;

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn h_graph() -> CommutationGraph {
    let c = CommutationGraph::cycle_with_chord(5).unwrap();
    let (g, _) = c.induced(c.vertex_set(&["a1", "a2", "a3", "a4"]).unwrap()).unwrap();
    g
}

/// Chunk counts at `n = 5` for `d = 0..=max_d`, with `l_H` also recounted
/// as a Cayley ball of `H`.
pub fn check_n5_formulas(max_d: usize) -> Result<String, String> {
    let start = Instant::now();
    let hball = ball(&h_graph(), max_d);
    for d in 0..=max_d {
        let t = Tables::build(5, d, NfMode::Square).map_err(|e| e.to_string())?;
        let by_ball = hball.values().filter(|&&r| r <= d).count() as u64;
        let pairs = [
            ("l_H", big(t.l_h()), formulas::l_h_n5(d)),
            ("l_H ball", big(by_ball), formulas::l_h_n5(d)),
            ("l_HU", big(t.l_hu()), formulas::l_hu_n5(d)),
            ("e", big(t.e()), formulas::e_n5(d)),
            ("l_U", big(t.l_u()), formulas::l_u(d)),
            ("l_U direct", big(enumerate_lu(d)), formulas::l_u(d)),
        ];
        for (name, got, want) in pairs {
            if got != want {
                return Err(format!("d={d} {name}: enumerated {got}, formula {want}"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs > 120.0 {
        return Err(format!("took {secs:.1}s"));
    }
    Ok(format!("d=0..={max_d} exact, {secs:.1}s"))
}

/// Normal-form count bounds for `n ∈ {6, 7}` up to length 5; every
/// violation is listed.
pub fn check_bounds() -> Result<String, String> {
    let mut held = 0;
    let mut failed = Vec::new();
    for n in [6, 7] {
        for b in bound_checks(n, 5).map_err(|e| e.to_string())? {
            if b.holds {
                held += 1;
            } else {
                failed.push(format!("n={n} {} m={}: {} ≤ {} ≤ {} fails", b.name, b.length, b.lower, b.value, b.upper));
            }
        }
    }
    if failed.is_empty() {
        Ok(format!("{held} bounds hold"))
    } else {
        Err(format!("{held} hold; {}", failed.join("; ")))
    }
}

/// Exact tallies by tuple enumeration, for `d ≤ max_d`, `k ≤ max_k`.
pub fn enumerated_grid(max_d: usize, max_k: usize) -> Result<Vec<(usize, usize, Tables, pcgroup::census::Tally)>, String> {
    let mut out = Vec::new();
    for d in 1..=max_d {
        let t = Tables::build(5, d, NfMode::Square).map_err(|e| e.to_string())?;
        for k in 1..=max_k {
            let tally = enumerate_composed(&t, k, CONVENTION).map_err(|e| e.to_string())?;
            out.push((d, k, t.clone(), tally));
        }
    }
    Ok(out)
}

/// `l^i` and `l^ii` against the closed forms; residuals under the other
/// conventions are reported.
pub fn check_composed_formulas(
    grid: &[(usize, usize, Tables, pcgroup::census::Tally)],
) -> Result<String, String> {
    let mut residuals: HashMap<&str, Vec<String>> = HashMap::new();
    for (d, k, t, tally) in grid {
        let (d, k) = (*d, *k);
        let want_i = formulas::l_i(d, k);
        let want_ii = geometric_total(&formulas::l_h_n5(d), &formulas::l_hu_n5(d), k).map_err(|e| e.to_string())?;
        if tally.l_i != want_i || tally.l_ii != want_ii {
            return Err(format!("d={d} k={k}: l^i {} vs {want_i}, l^ii {} vs {want_ii}", tally.l_i, tally.l_ii));
        }
        for conv in Convention::ALL.into_iter().filter(|&c| c != CONVENTION) {
            let other = count_composed(t, k, conv).map_err(|e| e.to_string())?;
            let gap = &want_ii - &other.l_ii;
            residuals.entry(conv.name()).or_default().push(format!("({d},{k})={gap}"));
        }
    }
    let mut msg = format!("convention {}, residual 0", CONVENTION.name());
    let mut names: Vec<_> = residuals.keys().copied().collect();
    names.sort();
    for name in names {
        msg.push_str(&format!("; {name} residuals {}", residuals[name].join(" ")));
    }
    Ok(msg)
}

/// Complement identities, the thick count and the `t`-power bound.
pub fn check_z_identities(grid: &[(usize, usize, Tables, pcgroup::census::Tally)]) -> Result<String, String> {
    let mut worst: f64 = 0.0;
    for (d, k, t, tally) in grid {
        let (d, k) = (*d, *k);
        let total = tally.total();
        if &total - &tally.z1 != big(t.l_d0()) {
            return Err(format!("d={d} k={k}: |Z1^c| = {} vs l(d,0) = {}", &total - &tally.z1, t.l_d0()));
        }
        let want3 = formulas::l_u(d) + formulas::l_i(d, k);
        if &total - &tally.z3 != want3 {
            return Err(format!("d={d} k={k}: |Z3^c| = {} vs {want3}", &total - &tally.z3));
        }
        let th = formulas::l_h_n5(d) - formulas::e_prime_n5(d);
        let thu = formulas::l_hu_n5(d) - formulas::e_n5(d);
        let want2 = formulas::l_i(d, k) + geometric_total(&th, &thu, k).map_err(|e| e.to_string())?;
        if tally.z2 != want2 {
            return Err(format!("d={d} k={k}: z2 = {} vs {want2}", tally.z2));
        }
        let bound = t_power_bound(t.l_hu() as f64, t.l_h() as f64, 2.0 * d as f64, k)
            .ok_or_else(|| format!("d={d}: bound undefined"))?;
        let powers = tally.powers_ii.to_f64().unwrap();
        if powers > bound {
            return Err(format!("d={d} k={k}: {powers} t-powers exceed bound {bound:.3e}"));
        }
        worst = worst.max(powers / bound);
    }
    Ok(format!("identities exact; largest t-power count / bound = {worst:.3e}"))
}

/// Exact densities of `Z_Y` at `n = 5` over `d, k ∈ 1..=4`.
pub fn density_grid() -> Result<Vec<Vec<f64>>, String> {
    let mut grid = Vec::new();
    for d in 1..=4 {
        let t = Tables::build(5, d, NfMode::Square).map_err(|e| e.to_string())?;
        let mut row = Vec::new();
        for k in 1..=4 {
            let tally = count_composed(&t, k, CONVENTION).map_err(|e| e.to_string())?;
            let num = tally.zy.to_f64().unwrap();
            let den = tally.total().to_f64().unwrap();
            row.push(num / den);
        }
        grid.push(row);
    }
    Ok(grid)
}

/// Nondecreasing in `d` and in `k`, and the far corner above the near one.
pub fn check_density_trend(grid: &[Vec<f64>]) -> Result<String, String> {
    let show = grid
        .iter()
        .map(|r| r.iter().map(|x| format!("{x:.6}")).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(" | ");
    let mut bad = Vec::new();
    for d in 0..4 {
        for k in 0..4 {
            if d + 1 < 4 && grid[d + 1][k] < grid[d][k] {
                bad.push(format!("d{}→d{} at k={}", d + 1, d + 2, k + 1));
            }
            if k + 1 < 4 && grid[d][k + 1] < grid[d][k] {
                bad.push(format!("k{}→k{} at d={}", k + 1, k + 2, d + 1));
            }
        }
    }
    if grid[3][3] <= grid[0][0] {
        bad.push("rho(4,4) <= rho(1,1)".into());
    }
    if bad.is_empty() {
        Ok(format!("grid {show}"))
    } else {
        Err(format!("grid {show}; decreases: {}", bad.join(", ")))
    }
}

fn freely_reduced_words(letters: &[Letter], max: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Vec::<Letter>::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &frontier {
            for &x in letters {
                if w.last() != Some(&x.inv()) {
                    let mut w2 = w.clone();
                    w2.push(x);
                    next.push(w2);
                }
            }
        }
        out.extend(next.iter().cloned().map(Word));
        frontier = next;
    }
    out
}

/// Buckets freely reduced words over `a1 … a_{n−1}` by element; each bucket
/// must hold exactly one normal form.
pub fn check_unique_normal_forms(n: usize, max: usize, mode: NfMode) -> Result<usize, String> {
    let g = CommutationGraph::cycle_with_chord(n).unwrap();
    let letters: Vec<Letter> = (1..n).flat_map(|v| [Letter::new(v, false), Letter::new(v, true)]).collect();
    let mut buckets: HashMap<Key, usize> = HashMap::new();
    for w in freely_reduced_words(&letters, max) {
        let slot = buckets.entry(key(&g, &w.0)).or_default();
        if is_normal_form(n, &w, mode).map_err(|e| e.to_string())? {
            *slot += 1;
        }
    }
    match buckets.iter().find(|(_, &c)| c != 1) {
        Some((k, c)) => Err(format!("n={n} {mode:?}: element {k:?} has {c} normal forms")),
        None => Ok(buckets.len()),
    }
}
