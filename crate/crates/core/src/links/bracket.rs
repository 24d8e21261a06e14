use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{LaurentPoly, LinkDiagram, LinkError};
use crate::unionfind::UnionFind;

/// Environment variable overriding [`BracketOptions::crossing_cap`].
pub const CROSSING_CAP_ENV: &str = "PLUMBLINE_CROSSING_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BracketOptions {
    /// Largest diagram evaluated by the full state sum.
    pub crossing_cap: usize,
    /// Largest component count for orientation enumeration.
    pub component_cap: usize,
}

impl Default for BracketOptions {
    fn default() -> Self {
        Self { crossing_cap: 20, component_cap: 16 }
    }
}

impl BracketOptions {
    /// Defaults, with the crossing cap read from [`CROSSING_CAP_ENV`] when
    /// it holds a number.
    pub fn from_env() -> Self {
        let mut o = Self::default();
        if let Some(cap) = std::env::var(CROSSING_CAP_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            o.crossing_cap = cap;
        }
        o
    }
}

/// `d = -A^2 - A^-2`.
fn loop_value() -> LaurentPoly {
    LaurentPoly::from_terms([(2, -1), (-2, -1)])
}

/// Full state sum over all `2^n` smoothings, ignoring any recorded
/// connected-sum decomposition.
///
/// The A-smoothing of `(a,b,c,d)` joins `a`-`b` and `c`-`d`; the
/// B-smoothing joins `a`-`d` and `b`-`c`. Each state contributes
/// `A^(#A - #B) d^(loops - 1)`.
pub fn bracket_state_sum(l: &LinkDiagram, cap: usize) -> Result<LaurentPoly, LinkError> {
    let n = l.crossing_count();
    if n > cap {
        return Err(LinkError::CrossingCap { crossings: n, cap });
    }
    if n == 0 {
        return Ok(loop_value().pow(l.loops().len().saturating_sub(1) as u32));
    }
    let arcs: Vec<u32> = l.occurrences().into_keys().collect();
    let dense: Vec<[usize; 4]> =
        l.crossings().iter().map(|c| c.arcs.map(|a| arcs.binary_search(&a).expect("known arc"))).collect();
    let extra_loops = l.loops().len();

    // Split the state space on the top bits so the work parallelises while
    // the per-chunk tables merge by exact integer addition.
    let split = n.min(8);
    let low = n - split;
    let table: BTreeMap<(i64, usize), u128> = (0u64..1 << split)
        .into_par_iter()
        .map(|high| {
            let mut local: BTreeMap<(i64, usize), u128> = BTreeMap::new();
            for rest in 0u64..1 << low {
                let state = (high << low) | rest;
                let mut uf = UnionFind::new(arcs.len());
                let mut a_minus_b = 0i64;
                for (i, c) in dense.iter().enumerate() {
                    if state >> i & 1 == 0 {
                        uf.union(c[0], c[1]);
                        uf.union(c[2], c[3]);
                        a_minus_b += 1;
                    } else {
                        uf.union(c[0], c[3]);
                        uf.union(c[1], c[2]);
                        a_minus_b -= 1;
                    }
                }
                *local.entry((a_minus_b, uf.count() + extra_loops)).or_default() += 1;
            }
            local
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });

    let d = loop_value();
    let mut powers: Vec<LaurentPoly> = vec![LaurentPoly::one()];
    let mut total = LaurentPoly::zero();
    for ((exp, loops), count) in table {
        while powers.len() < loops {
            let next = powers.last().expect("non-empty") * &d;
            powers.push(next);
        }
        let count = i128::try_from(count).expect("state count fits");
        total = &total + &powers[loops - 1].shift(exp).scale(count);
    }
    Ok(total)
}

/// Kauffman bracket normalised so the unknot is 1. A recorded
/// connected-sum decomposition is evaluated as the product of its factors;
/// otherwise the full state sum runs, subject to the crossing cap.
pub fn kauffman_bracket_with(l: &LinkDiagram, opts: &BracketOptions) -> Result<LaurentPoly, LinkError> {
    if !l.summands().is_empty() {
        return l.summands().iter().map(|s| kauffman_bracket_with(s, opts)).product();
    }
    bracket_state_sum(l, opts.crossing_cap)
}

pub fn kauffman_bracket(l: &LinkDiagram) -> Result<LaurentPoly, LinkError> {
    kauffman_bracket_with(l, &BracketOptions::from_env())
}

fn normalise(bracket: &LaurentPoly, writhe: i64) -> LaurentPoly {
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    bracket.shift(-3 * writhe).scale(sign)
}

/// Jones polynomial `(-A^3)^(-w) <L>`, stored in the variable `A` with
/// `t = A^-4`.
pub fn jones_with(l: &LinkDiagram, opts: &BracketOptions) -> Result<LaurentPoly, LinkError> {
    let w = l.writhe()?;
    Ok(normalise(&kauffman_bracket_with(l, opts)?, w))
}

pub fn jones(l: &LinkDiagram) -> Result<LaurentPoly, LinkError> {
    jones_with(l, &BracketOptions::from_env())
}

/// Jones polynomials of a diagram and of its mirror over every orientation
/// choice, in orientation order (bit `i` of the index reverses component
/// `i`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmphichiralReport {
    pub orientations: usize,
    pub jones: Vec<LaurentPoly>,
    pub mirror_jones: Vec<LaurentPoly>,
    /// Whether the two multisets agree. Since `V(m(L))(t) = V(L)(1/t)`,
    /// this is the statement that the Jones multiset of `L` is closed
    /// under `t <-> 1/t`. Necessary for amphichirality, not sufficient.
    pub passes: bool,
}

pub fn amphichiral_evidence(l: &LinkDiagram, opts: &BracketOptions) -> Result<AmphichiralReport, LinkError> {
    let base = l.unoriented();
    let k = base.components().len();
    if k > opts.component_cap {
        return Err(LinkError::ComponentCap { components: k, cap: opts.component_cap });
    }
    let mirror = base.mirror();
    let bracket = kauffman_bracket_with(&base, opts)?;
    let mirror_bracket = kauffman_bracket_with(&mirror, opts)?;
    let orientations = 1usize << k;
    let mut jones = Vec::with_capacity(orientations);
    let mut mirror_jones = Vec::with_capacity(orientations);
    for bits in 0..orientations {
        let flips: Vec<bool> = (0..k).map(|i| bits >> i & 1 == 1).collect();
        jones.push(normalise(&bracket, base.orient(&flips)?.writhe()?));
        mirror_jones.push(normalise(&mirror_bracket, mirror.orient(&flips)?.writhe()?));
    }
    let mut a = jones.clone();
    let mut b = mirror_jones.clone();
    a.sort();
    b.sort();
    Ok(AmphichiralReport { orientations, jones, mirror_jones, passes: a == b })
}
