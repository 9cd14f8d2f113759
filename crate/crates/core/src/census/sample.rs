//! Uniform sampling from `L(d, k)`.
//!
//! A uniform index below `|L(d, k)|` is decoded through the exact stratum
//! counts, so every composed word is drawn with equal probability.

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::composed::{candidates, classify, signed, Composition, ComposedWord, Convention};
use super::tables::Tables;
use super::CensusError;

/// Largest `k` accepted by the sampler.
pub const MAX_K: usize = 14;

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SampleTally {
    pub samples: u64,
    pub z1: u64,
    pub z2: u64,
    pub z3: u64,
    pub z4: u64,
    pub zy: u64,
    pub rho_hat: f64,
    /// Binomial standard error of `rho_hat`.
    pub stderr: f64,
}

struct Strata {
    base: Vec<usize>,
    units: Vec<usize>,
    k: usize,
    lead: Vec<usize>,
    rest: Vec<usize>,
    /// Exponent vector and number of tuples sharing it.
    composed: Vec<(Vec<i64>, BigUint)>,
}

impl Strata {
    fn new(tables: &Tables, k: usize, conv: Convention) -> Strata {
        let (lead, rest) = candidates(tables, conv);
        let mut composed = Vec::new();
        for l in 1..=k {
            for comp in Composition::all(l) {
                let r = comp.parts.len();
                let size = BigUint::from(lead.len()) * BigUint::from(rest.len()).pow(r as u32 - 1);
                for e in signed(&comp.parts) {
                    composed.push((e, size.clone()));
                }
            }
        }
        Strata {
            base: (0..tables.lh.len()).filter(|&i| tables.lh[i].cyclically_minimal).collect(),
            units: (0..tables.lh.len()).filter(|&i| tables.lh[i].in_u).collect(),
            k,
            lead,
            rest,
            composed,
        }
    }

    fn total(&self) -> BigUint {
        let mut t = BigUint::from(self.base.len() + 2 * self.k * self.units.len());
        for (_, s) in &self.composed {
            t += s;
        }
        t
    }

    fn decode(&self, mut idx: BigUint) -> ComposedWord {
        let small = |x: &BigUint| x.to_usize().expect("index fits");
        if idx < BigUint::from(self.base.len()) {
            return ComposedWord::Base(self.base[small(&idx)]);
        }
        idx -= self.base.len();
        let n_i = BigUint::from(2 * self.k * self.units.len());
        if idx < n_i {
            let i = small(&idx);
            let (u, rem) = (i / (2 * self.k), i % (2 * self.k));
            let l = (rem / 2 + 1) as i64;
            let exponent = if rem % 2 == 0 { l } else { -l };
            return ComposedWord::TypeI { u: self.units[u], exponent };
        }
        idx -= n_i;
        for (exponents, size) in &self.composed {
            if idx >= *size {
                idx -= size;
                continue;
            }
            let r = exponents.len();
            let mut gs = vec![0; r - 1];
            for slot in gs.iter_mut().rev() {
                let (q, m) = idx.div_rem(&BigUint::from(self.rest.len()));
                *slot = self.rest[small(&m)];
                idx = q;
            }
            return ComposedWord::TypeII {
                c0: self.lead[small(&idx)],
                gs,
                exponents: exponents.clone(),
            };
        }
        unreachable!("index below the total")
    }
}

/// Draws `samples` words uniformly from `L(d, k)` and classifies them.
pub fn sample_composed(
    tables: &Tables,
    k: usize,
    conv: Convention,
    samples: u64,
    seed: Option<u64>,
) -> Result<(SampleTally, BigUint), CensusError> {
    let seed = seed.ok_or(CensusError::BadSeed)?;
    if k > MAX_K {
        return Err(CensusError::BudgetExceeded);
    }
    if samples == 0 {
        return Err(CensusError::BadParameter("sample size must be positive".into()));
    }
    let strata = Strata::new(tables, k, conv);
    let total = strata.total();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = SampleTally { samples, ..Default::default() };
    for _ in 0..samples {
        let w = strata.decode(rng.gen_biguint_below(&total));
        let f = classify(tables, &w);
        t.z1 += f.z1 as u64;
        t.z2 += f.z2 as u64;
        t.z3 += f.z3 as u64;
        t.z4 += f.z4 as u64;
        t.zy += f.zy() as u64;
    }
    let p = t.zy as f64 / samples as f64;
    t.rho_hat = p;
    t.stderr = (p * (1.0 - p) / samples as f64).sqrt();
    Ok((t, total))
}

/// The `i`-th composed word in stratum order, for `i < |L(d, k)|`.
pub fn composed_at(tables: &Tables, k: usize, conv: Convention, i: &BigUint) -> Option<ComposedWord> {
    let strata = Strata::new(tables, k, conv);
    (*i < strata.total()).then(|| strata.decode(i.clone()))
}
