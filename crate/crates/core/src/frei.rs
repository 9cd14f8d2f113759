//! Embedding verdicts for one-relator quotients `G = 𝔾 / N(sⁿ)`.
//!
//! Verdicts come only from checkable criteria:
//!
//! - `thick_root_criterion`: `lk(t)` a clique (or empty), `s` t-thick,
//!   `s ∉ ⟨st(t)⟩`, `s` a t-root and `n ≥ 3` give an embedding of `⟨A ∖ {t}⟩`.
//! - `abelian_support` / `free_support`: `supp(s)` synchronised and a clique
//!   (resp. independent) gives embeddings of every `⟨A ∖ {t}⟩`, `t ∈ supp(s)`.
//! - `abelian_support_converse`: a clique support that is not synchronised
//!   has an explicit witness against some `⟨A ∖ {t}⟩`.
//! - `central_reduction`: the criterion applied after splitting off the centre.
//! - `chord_reduction`: the criterion applied after completing `lk(t)` to a
//!   clique, which embeds `⟨A ∖ st(t)⟩`.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{CommutationGraph, Vertex, VertexSet};
use crate::hnn::{hnn_factorize, is_cyclically_t_thick, is_t_root, is_t_thick};
use crate::words::{format_word, is_cyclically_minimal, minimal_form, Letter, NormalForm, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreiError {
    #[error("relator is not cyclically minimal")]
    NotCyclicallyMinimal,
    #[error("`{0}` is not in the support of the relator")]
    TNotInSupport(String),
    #[error("relator is trivial")]
    EmptyRelator,
    #[error("exponent must be positive")]
    BadExponent,
    #[error("conflicting verdicts for {0}")]
    ConflictingVerdicts(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Embeds,
    DoesNotEmbed,
    RestrictedEmbeds,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conclusion {
    pub subset: Vec<String>,
    pub status: Status,
    pub justification: String,
}

/// Hypotheses of the thick-root criterion for one choice of `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerT {
    pub t: String,
    pub lk_clique: bool,
    /// `None` when `lk(t)` is not a clique and thickness is not evaluated.
    pub t_thick: Option<bool>,
    pub cyclically_t_thick: Option<bool>,
    pub not_in_star: bool,
    pub t_root: bool,
    pub verdict: String,
}

impl PerT {
    pub fn passes(&self) -> bool {
        self.lk_clique && self.t_thick == Some(true) && self.not_in_star && self.t_root
    }
}

/// Data re-checkable from the graph alone for a negative verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub t: String,
    pub x: String,
    pub a: String,
    /// Commutator that holds in `G` but not in `𝔾`.
    pub relation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Amalgam {
    pub synchronised: bool,
    pub supp_clique: bool,
    pub supp_independent: bool,
    /// `Y = supp(s)`.
    pub support: Vec<String>,
    pub link: Vec<String>,
    /// `A ∖ (Y ∪ lk(Y))`.
    pub rest: Vec<String>,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Order {
    Value(u64),
    Unknown(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreiReport {
    pub s: String,
    pub n: u64,
    pub per_t: Vec<PerT>,
    pub amalgam: Amalgam,
    pub conclusions: Vec<Conclusion>,
    pub order_of_s: Order,
    pub word_problem: &'static str,
    pub conjugacy_problem: &'static str,
}

const DECIDABLE: &str = "decidable";
const UNKNOWN: &str = "unknown";

fn canonical_relator(g: &CommutationGraph, s: &Word) -> Result<NormalForm, FreiError> {
    let nf = minimal_form(g, s);
    if nf.is_identity() {
        return Err(FreiError::EmptyRelator);
    }
    if !is_cyclically_minimal(g, nf.word()) {
        return Err(FreiError::NotCyclicallyMinimal);
    }
    Ok(nf)
}

/// Evaluates the four hypotheses of the thick-root criterion for `t`.
pub fn check_theorem_main(
    g: &CommutationGraph,
    s: &Word,
    t: Vertex,
) -> Result<PerT, FreiError> {
    let nf = canonical_relator(g, s)?;
    let supp = nf.support();
    if !supp.contains(t) {
        return Err(FreiError::TNotInSupport(
            g.names().get(t).cloned().unwrap_or_else(|| t.to_string()),
        ));
    }
    let lk = g.neighbours(t);
    let lk_clique = g.is_clique(lk).expect("in range");
    let h = hnn_factorize(g, t, nf.word()).expect("t is a vertex");
    let (t_thick, cyclically_t_thick) = if lk_clique {
        (
            Some(is_t_thick(g, &h).expect("clique link")),
            Some(is_cyclically_t_thick(g, &h).expect("clique link")),
        )
    } else {
        (None, None)
    };
    let not_in_star = !supp.is_subset(g.star(t));
    let t_root = is_t_root(g, &h).expect("t is a vertex");
    let mut rec = PerT {
        t: g.name(t).to_string(),
        lk_clique,
        t_thick,
        cyclically_t_thick,
        not_in_star,
        t_root,
        verdict: String::new(),
    };
    rec.verdict = if rec.passes() { "PASS" } else { "FAIL" }.to_string();
    Ok(rec)
}

struct Outcome {
    conclusions: Vec<(VertexSet, Status, &'static str)>,
    order: bool,
    word: bool,
    conjugacy: bool,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            conclusions: Vec::new(),
            order: false,
            word: false,
            conjugacy: false,
        }
    }

    fn add(&mut self, subset: VertexSet, status: Status, tag: &'static str) {
        if !self
            .conclusions
            .iter()
            .any(|(s, st, t)| *s == subset && *st == status && *t == tag)
        {
            self.conclusions.push((subset, status, tag));
        }
    }
}

/// Synchronisation test on `supp(s)` and the amalgam-based verdicts.
pub fn check_amalgam(
    g: &CommutationGraph,
    s: &Word,
    n: u64,
) -> Result<(Amalgam, Vec<Conclusion>), FreiError> {
    let nf = canonical_relator(g, s)?;
    let mut out = Outcome::new();
    let amalgam = amalgam_into(g, &nf, n, &mut out);
    Ok((amalgam, render(g, &out)))
}

fn amalgam_into(g: &CommutationGraph, nf: &NormalForm, n: u64, out: &mut Outcome) -> Amalgam {
    let y = nf.support();
    let lk = g.link(y).expect("support is nonempty");
    let rest = g.all().difference(y.union(lk));
    let synchronised = g.is_synchronised(y).expect("support is nonempty");
    let clique = g.is_clique(y).expect("in range");
    let independent = g.is_independent(y).expect("in range");
    let mut witnesses = Vec::new();
    if synchronised && (clique || independent) {
        let tag = if clique { "abelian_support" } else { "free_support" };
        for t in y.iter() {
            out.add(g.all().without(t), Status::Embeds, tag);
        }
        out.order = true;
        out.word = true;
        if clique || n >= 2 {
            out.conjugacy = true;
        }
    }
    if clique && !synchronised {
        for t in y.iter() {
            let found = rest.iter().filter(|&x| g.adjacent(x, t)).find_map(|x| {
                y.iter().find(|&a| !g.adjacent(x, a)).map(|a| (x, a))
            });
            if let Some((x, a)) = found {
                out.add(g.all().without(t), Status::DoesNotEmbed, "abelian_support_converse");
                witnesses.push(Witness {
                    t: g.name(t).to_string(),
                    x: g.name(x).to_string(),
                    a: g.name(a).to_string(),
                    relation: collapsed_commutator(g, nf, t, x, n),
                });
            }
        }
    }
    Amalgam {
        synchronised,
        supp_clique: clique,
        supp_independent: independent,
        support: g.set_names(y),
        link: g.set_names(lk),
        rest: g.set_names(rest),
        witnesses,
    }
}

/// `[x, c]` with `c = sⁿ` stripped of its `t`-letters; on an abelian support
/// this equals `t^{-m}` in `G` and so commutes with `x` there.
fn collapsed_commutator(g: &CommutationGraph, s: &NormalForm, t: Vertex, x: Vertex, n: u64) -> String {
    let c: Word = s
        .word()
        .pow(n as usize)
        .letters()
        .iter()
        .copied()
        .filter(|l| l.v() != t)
        .collect();
    let c = minimal_form(g, &c);
    format!("[{}, {}]", g.name(x), format_word(g, c.word()))
}

fn theorem_main_into(
    g: &CommutationGraph,
    nf: &NormalForm,
    n: u64,
    out: &mut Outcome,
) -> Vec<PerT> {
    let mut records = Vec::new();
    for t in nf.support().iter() {
        let rec = check_theorem_main(g, nf.word(), t).expect("validated relator");
        if rec.passes() && n >= 3 {
            out.add(g.all().without(t), Status::Embeds, "thick_root_criterion");
            out.order = true;
            if n >= 4 {
                out.word = true;
            }
        }
        records.push(rec);
    }
    records
}

/// Splits off central vertices and reapplies the criterion to the projection.
fn central_reduction_into(g: &CommutationGraph, nf: &NormalForm, n: u64, out: &mut Outcome) {
    let z = g.central_vertices();
    if z.is_empty() || n < 3 {
        return;
    }
    let keep = g.all().difference(z);
    let Ok((g0, kept)) = g.induced(keep) else {
        return;
    };
    let position = |v: Vertex| kept.iter().position(|&k| k == v);
    let s0: Word = nf
        .letters()
        .iter()
        .filter_map(|l| position(l.v()).map(|i| Letter::new(i, l.inverse)))
        .collect();
    let Ok(nf0) = canonical_relator(&g0, &s0) else {
        return;
    };
    for t0 in nf0.support().iter() {
        let rec = check_theorem_main(&g0, nf0.word(), t0).expect("validated relator");
        if rec.passes() {
            out.add(keep.without(kept[t0]), Status::Embeds, "central_reduction");
            out.order = true;
        }
    }
}

/// Completes `lk(t)` to a clique and reapplies the criterion; the quotient
/// map then embeds `⟨A ∖ st(t)⟩`.
fn chord_reduction_into(g: &CommutationGraph, nf: &NormalForm, n: u64, out: &mut Outcome) {
    if n < 3 {
        return;
    }
    for t in nf.support().iter() {
        let lk = g.neighbours(t);
        if g.is_clique(lk).expect("in range") {
            continue;
        }
        let mut g2 = g.clone();
        for u in lk.iter() {
            for v in lk.iter().filter(|&v| v > u) {
                if !g2.adjacent(u, v) {
                    g2 = g2.with_edge(u, v).expect("distinct vertices");
                }
            }
        }
        let Ok(nf2) = canonical_relator(&g2, nf.word()) else {
            continue;
        };
        if !nf2.support().contains(t) {
            continue;
        }
        let rec = check_theorem_main(&g2, nf2.word(), t).expect("validated relator");
        let restricted = g.all().difference(g.star(t));
        if rec.passes() && !restricted.is_empty() {
            out.add(restricted, Status::RestrictedEmbeds, "chord_reduction");
        }
    }
}

fn render(g: &CommutationGraph, out: &Outcome) -> Vec<Conclusion> {
    out.conclusions
        .iter()
        .map(|(set, status, tag)| Conclusion {
            subset: g.set_names(*set),
            status: *status,
            justification: tag.to_string(),
        })
        .collect()
}

/// Runs every criterion and aggregates the verdicts.
pub fn magnus_verdict(g: &CommutationGraph, s: &Word, n: u64) -> Result<FreiReport, FreiError> {
    if n == 0 {
        return Err(FreiError::BadExponent);
    }
    let nf = canonical_relator(g, s)?;
    let mut out = Outcome::new();
    let per_t = theorem_main_into(g, &nf, n, &mut out);
    let amalgam = amalgam_into(g, &nf, n, &mut out);
    central_reduction_into(g, &nf, n, &mut out);
    chord_reduction_into(g, &nf, n, &mut out);

    // A subset that embeds forces all of its subsets to embed.
    let positive = |st: Status| matches!(st, Status::Embeds | Status::RestrictedEmbeds);
    for (bad, st, _) in &out.conclusions {
        if *st != Status::DoesNotEmbed {
            continue;
        }
        if out
            .conclusions
            .iter()
            .any(|(good, st2, _)| positive(*st2) && bad.is_subset(*good))
        {
            return Err(FreiError::ConflictingVerdicts(g.set_names(*bad).join(",")));
        }
    }
    for t in nf.support().iter() {
        let subset = g.all().without(t);
        if !out.conclusions.iter().any(|(s, _, _)| *s == subset) {
            out.add(subset, Status::Unknown, "no_applicable_criterion");
        }
    }

    Ok(FreiReport {
        s: format_word(g, nf.word()),
        n,
        per_t,
        amalgam,
        conclusions: render(g, &out),
        order_of_s: if out.order {
            Order::Value(n)
        } else {
            Order::Unknown(UNKNOWN)
        },
        word_problem: if out.word { DECIDABLE } else { UNKNOWN },
        conjugacy_problem: if out.conjugacy { DECIDABLE } else { UNKNOWN },
    })
}
