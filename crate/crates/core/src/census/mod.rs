//! Normal-form census over the chorded cycles `C′_n`.
//!
//! `C′_n` has vertices `t, a1, …, a_{n-1}`, the `n`-cycle edges and the chord
//! `a1 a_{n-1}`, so `lk(t) = {a1, a_{n-1}}` is a clique. `H = ⟨a1, …, a_{n-1}⟩`
//! and `U = ⟨a1, a_{n-1}⟩`. The census enumerates normal forms for `H`,
//! assembles composed words with `t`-length at most `k`, tallies how many
//! satisfy each hypothesis of the embedding theorem, and checks the closed
//! counting formulas against the enumeration.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

mod composed;
pub mod formulas;
mod normal_forms;
mod patterns;
mod sample;
mod tables;

pub use composed::{
    classify, classify_formal, classify_word, enumerate_composed, for_each_type_ii, type_ii_count,
    ComposedWord, Composition, Convention, Tally, ZFlags, TUPLE_BUDGET,
};
pub use normal_forms::{enumerate_normal_forms, is_normal_form, NfMode};
pub use patterns::{count_composed, MAX_K as PATTERN_MAX_K};
pub use sample::{composed_at, sample_composed, SampleTally, MAX_K as SAMPLE_MAX_K};
pub use tables::{enumerate_lu, ChunkInfo, SplitCounts, Tables, ELEMENT_BUDGET};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("letter with vertex index {0} is outside a1..a(n-1)")]
    BadAlphabet(usize),
    #[error("enumeration budget exceeded")]
    BudgetExceeded,
    #[error("closed formula is not integral: {0}")]
    NonIntegralFormula(String),
    #[error("sample mode needs a seed")]
    BadSeed,
    #[error("{0}")]
    BadParameter(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CensusParams {
    pub n: usize,
    pub d: usize,
    pub k: usize,
}

impl CensusParams {
    pub fn new(n: usize, d: usize, k: usize) -> Result<Self, CensusError> {
        normal_forms::check_n(n)?;
        Ok(CensusParams { n, d, k })
    }

    pub fn alpha(&self) -> u64 {
        2 * self.n as u64 - 5
    }

    pub fn gamma(&self) -> u64 {
        2 * self.n as u64 - 7
    }

    pub fn beta(&self) -> i64 {
        2 * self.n as i64 - 9
    }
}

/// A count that serializes as a JSON number when it fits in `u64`, and as a
/// decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Count(pub BigUint);

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<T: Into<BigUint>> From<T> for Count {
    fn from(x: T) -> Self {
        Count(x.into())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Source {
    Enumerated,
    Formula,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tagged {
    pub value: Count,
    pub source: Source,
}

/// An enumerated value next to its closed form.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub enumerated: Count,
    pub formula: Count,
    pub agree: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityMode {
    Exhaustive,
    Sample { samples: u64, seed: Option<u64> },
}

impl DensityMode {
    fn name(&self) -> &'static str {
        match self {
            DensityMode::Exhaustive => "exhaustive",
            DensityMode::Sample { .. } => "sample",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub alpha: u64,
    pub gamma: u64,
    pub beta: i64,
    pub mode: &'static str,
    pub seed: Option<u64>,
    pub convention: &'static str,
    pub counts: BTreeMap<&'static str, Tagged>,
    /// Normal forms of each exact length `0..=d`.
    pub l_hs: Vec<Count>,
    pub splits: SplitCounts,
    pub checks: BTreeMap<&'static str, Check>,
    pub rho_hat: f64,
    pub rho_stderr: Option<f64>,
    pub samples: Option<u64>,
    /// Upper bound for the number of type (ii) `t`-powers, when defined.
    pub t_power_bound: Option<f64>,
}

impl CensusRow {
    pub fn value(&self, key: &str) -> Option<&BigUint> {
        self.counts.get(key).map(|t| &t.value.0)
    }

    pub const CSV_HEADER: [&'static str; 19] = [
        "n", "d", "k", "l_H", "l_U", "l_HU", "e", "e_prime", "l1", "l2", "l_dk", "z1", "z2", "z3",
        "z4", "zY", "rho_hat", "mode", "seed",
    ];

    pub fn csv_record(&self) -> Vec<String> {
        let c = |k: &str| self.counts.get(k).map_or(String::new(), |t| t.value.to_string());
        let mut rec = vec![self.n.to_string(), self.d.to_string(), self.k.to_string()];
        for key in &Self::CSV_HEADER[3..16] {
            rec.push(c(key));
        }
        rec.push(format!("{:.12}", self.rho_hat));
        rec.push(self.mode.to_string());
        rec.push(self.seed.map_or(String::new(), |s| s.to_string()));
        rec
    }
}

fn ratio(a: &BigUint, b: &BigUint) -> f64 {
    if b.is_zero() {
        return 0.0;
    }
    // Scale before converting so huge counts keep their precision.
    let shift = b.bits().saturating_sub(60);
    let (a, b) = (a >> shift, b >> shift);
    a.to_f64().unwrap_or(f64::NAN) / b.to_f64().unwrap_or(f64::NAN)
}

/// One census row: exact chunk counts, composed-word tallies, and the closed
/// formulas wherever they apply.
pub fn census(
    params: CensusParams,
    mode: DensityMode,
    conv: Convention,
) -> Result<CensusRow, CensusError> {
    let CensusParams { n, d, k } = params;
    let tables = Tables::build(n, d, NfMode::default_for(n))?;
    let mut counts = BTreeMap::new();
    let mut put = |key: &'static str, v: BigUint, source: Source| {
        counts.insert(key, Tagged { value: Count(v), source });
    };
    use Source::*;
    put("l_H", tables.l_h().into(), Enumerated);
    put("l_U", tables.l_u().into(), Enumerated);
    put("l_HU", tables.l_hu().into(), Enumerated);
    put("e", tables.e().into(), Enumerated);
    put("e_prime", tables.e_prime().into(), Enumerated);
    put("t_H", tables.t_h().into(), Enumerated);
    put("t_HU", tables.t_hu().into(), Enumerated);
    put("l_d0", tables.l_d0().into(), Enumerated);
    let (rho_hat, rho_stderr, samples, seed);
    match mode {
        DensityMode::Exhaustive => {
            let tally = count_composed(&tables, k, conv)?;
            put("l1", tally.l_i.clone(), Enumerated);
            put("l2", tally.l_ii.clone(), Enumerated);
            put("l_dk", tally.total(), Enumerated);
            put("z1", tally.z1.clone(), Enumerated);
            put("z2", tally.z2.clone(), Enumerated);
            put("z3", tally.z3.clone(), Enumerated);
            put("z4", tally.z4.clone(), Enumerated);
            put("zY", tally.zy.clone(), Enumerated);
            put("t_powers_ii", tally.powers_ii.clone(), Enumerated);
            rho_hat = ratio(&tally.zy, &tally.total());
            rho_stderr = None;
            samples = None;
            seed = None;
        }
        DensityMode::Sample { samples: size, seed: s } => {
            let (st, total) = sample_composed(&tables, k, conv, size, s)?;
            put("l1", formulas::l_i(d, k), Formula);
            put("l2", type_ii_count(&tables, k, conv), Formula);
            put("l_dk", total, Formula);
            for (key, v) in [("z1", st.z1), ("z2", st.z2), ("z3", st.z3), ("z4", st.z4), ("zY", st.zy)] {
                put(key, v.into(), Sampled);
            }
            rho_hat = st.rho_hat;
            rho_stderr = Some(st.stderr);
            samples = Some(size);
            seed = s;
        }
    }
    let checks = formula_checks(&tables, k, conv, &counts)?;
    let a = tables.l_hu() as f64;
    let b = tables.l_h() as f64;
    Ok(CensusRow {
        n,
        d,
        k,
        alpha: params.alpha(),
        gamma: params.gamma(),
        beta: params.beta(),
        mode: mode.name(),
        seed,
        convention: conv.name(),
        l_hs: (0..=d).map(|m| Count::from(tables.l_hs(m))).collect(),
        splits: tables.splits(),
        counts,
        checks,
        rho_hat,
        rho_stderr,
        samples,
        t_power_bound: formulas::t_power_bound(a, b, 2.0 * d as f64, k),
    })
}

fn formula_checks(
    tables: &Tables,
    k: usize,
    conv: Convention,
    counts: &BTreeMap<&'static str, Tagged>,
) -> Result<BTreeMap<&'static str, Check>, CensusError> {
    let d = tables.d;
    let mut checks = BTreeMap::new();
    let mut check = |key: &'static str, formula: BigUint| {
        if let Some(t) = counts.get(key).filter(|t| t.source == Source::Enumerated) {
            checks.insert(
                key,
                Check {
                    agree: t.value.0 == formula,
                    enumerated: t.value.clone(),
                    formula: Count(formula),
                },
            );
        }
    };
    check("l_U", formulas::l_u(d));
    check("l1", formulas::l_i(d, k));
    let (lh, lhu, th, thu) = if tables.n == 5 {
        let lh = formulas::l_h_n5(d);
        let lhu = formulas::l_hu_n5(d);
        check("l_H", lh.clone());
        check("l_HU", lhu.clone());
        check("e", formulas::e_n5(d));
        check("e_prime", formulas::e_prime_n5(d));
        let th = &lh - formulas::e_prime_n5(d);
        let thu = &lhu - formulas::e_n5(d);
        (lh, lhu, th, thu)
    } else {
        (
            tables.l_h().into(),
            tables.l_hu().into(),
            tables.t_h().into(),
            tables.t_hu().into(),
        )
    };
    if conv == Convention::AllowTrivial {
        check("l2", formulas::geometric_total(&lh, &lhu, k)?);
        check("z2", formulas::l_i(d, k) + formulas::geometric_total(&th, &thu, k)?);
    }
    if let (Some(l_dk), Some(l_u), Some(l1)) = (counts.get("l_dk"), counts.get("l_U"), counts.get("l1")) {
        check("z1", &l_dk.value.0 - tables.l_d0());
        check("z3", &l_dk.value.0 - &l_u.value.0 - &l1.value.0);
    }
    Ok(checks)
}

/// One bound of the form `lower ≤ value ≤ upper`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub length: usize,
    pub lower: String,
    pub value: u64,
    pub upper: String,
    pub holds: bool,
}

/// The normal-form count bounds for `n ≥ 6` and lengths `1..=d`.
pub fn bound_checks(n: usize, d: usize) -> Result<Vec<BoundCheck>, CensusError> {
    normal_forms::check_n(n)?;
    if n < 6 {
        return Err(CensusError::BadParameter("bounds apply for n >= 6".into()));
    }
    let tables = Tables::build(n, d, NfMode::General)?;
    let p = CensusParams::new(n, d, 0)?;
    let (a, g) = (BigUint::from(p.alpha()), BigUint::from(p.gamma()));
    let n1 = BigUint::from(n as u64 - 1);
    let mut out = Vec::new();
    for m in 1..=d {
        let v = tables.l_hs(m);
        let lo = BigUint::from(2u32) * &n1 * g.pow(m as u32 - 1);
        let hi = BigUint::from(2u32) * &n1 * a.pow(m as u32 - 1);
        out.push(BoundCheck {
            name: "l_HS",
            length: m,
            holds: lo <= BigUint::from(v) && BigUint::from(v) <= hi,
            lower: lo.to_string(),
            value: v,
            upper: hi.to_string(),
        });
    }
    for m in 1..=d {
        let sub = Tables::build(n, m, NfMode::General)?;
        let v = BigUint::from(sub.l_hu());
        let lo = g.pow(m as u32) - 1u32;
        let hi = a.pow(m as u32) - 1u32;
        out.push(BoundCheck {
            name: "l_HU",
            length: m,
            holds: lo <= v && v <= hi,
            lower: lo.to_string(),
            value: sub.l_hu(),
            upper: hi.to_string(),
        });
        // (n−4)(l_H − 1) ≥ (n−1)(γ^m − 1) and (n−3)(l_H − 1) ≤ (n−1)(α^m − 1).
        let lh = BigUint::from(sub.l_h() - 1);
        let lo_ok = BigUint::from(n as u64 - 4) * &lh >= &n1 * (g.pow(m as u32) - 1u32);
        let hi_ok = BigUint::from(n as u64 - 3) * &lh <= &n1 * (a.pow(m as u32) - 1u32);
        out.push(BoundCheck {
            name: "l_H",
            length: m,
            lower: format!("1 + {}/{}·({}^{m} − 1)", n - 1, n - 4, p.gamma()),
            value: sub.l_h(),
            upper: format!("1 + {}/{}·({}^{m} − 1)", n - 1, n - 3, p.alpha()),
            holds: lo_ok && hi_ok,
        });
    }
    Ok(out)
}
