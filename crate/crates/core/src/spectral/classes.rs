//! Grouping of (nearly) equal eigenvalues and of (nearly) equal eigenvalue gaps.
//!
//! Both groupings are single-linkage over sorted values: neighbours closer than
//! `tau` share a class, so a run of near-degeneracies collapses into one class.
//! Such chains are reported through the `span` of each class.

use alloc::vec::Vec;
use core::ops::Range;

/// A maximal run of eigenvalues (by index into the ascending list).
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EigenClass {
    pub indices: Range<usize>,
    /// Mean of the member eigenvalues.
    pub value: f64,
    /// Largest minus smallest member.
    pub span: f64,
}

impl EigenClass {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Pairs `(m, n)`, `m < n`, whose gaps `value_n - value_m` agree within the tolerance.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GapClass {
    /// Mean gap of the members.
    pub gap: f64,
    pub span: f64,
    pub pairs: Vec<(usize, usize)>,
}

/// Partition of an ascending list into runs with consecutive differences `<= tau`.
pub fn degeneracy_classes(values: &[f64], tau: f64) -> Vec<EigenClass> {
    let mut classes = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > tau {
            if i > start {
                let members = &values[start..i];
                let value = members.iter().sum::<f64>() / members.len() as f64;
                classes.push(EigenClass {
                    indices: start..i,
                    value,
                    span: members[members.len() - 1] - members[0],
                });
            }
            start = i;
        }
    }
    classes
}

/// Partition of all pairs `(m, n)`, `m < n`, of an ascending list by gap.
///
/// The first class (present only if non-empty) is the zero-gap class and holds
/// exactly the pairs inside a degeneracy class. The remaining pairs are sorted
/// by gap and split wherever consecutive gaps differ by more than `tau`.
/// Classes come out in ascending gap order.
pub fn gap_classes(values: &[f64], tau: f64) -> Vec<GapClass> {
    let classes = degeneracy_classes(values, tau);
    let mut class_of = Vec::with_capacity(values.len());
    for (c, class) in classes.iter().enumerate() {
        class_of.extend(core::iter::repeat_n(c, class.len()));
    }

    let mut zero = Vec::new();
    let mut zero_span: f64 = 0.0;
    let mut cross = Vec::new();
    for m in 0..values.len() {
        for n in (m + 1)..values.len() {
            let gap = values[n] - values[m];
            if class_of[m] == class_of[n] {
                zero.push((m, n));
                zero_span = zero_span.max(gap);
            } else {
                cross.push((gap, m, n));
            }
        }
    }

    let mut out = Vec::new();
    if !zero.is_empty() {
        out.push(GapClass { gap: 0.0, span: zero_span, pairs: zero });
    }
    out.extend(group_by_gap(cross, tau));
    out
}

/// Single-linkage grouping of `(gap, m, n)` triples by gap.
pub(crate) fn group_by_gap(mut items: Vec<(f64, usize, usize)>, tau: f64) -> Vec<GapClass> {
    items.sort_by(|a, b| a.0.total_cmp(&b.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    let mut out: Vec<GapClass> = Vec::new();
    let mut start = 0;
    for i in 1..=items.len() {
        if i == items.len() || items[i].0 - items[i - 1].0 > tau {
            if i > start {
                let run = &items[start..i];
                let gap = run.iter().map(|x| x.0).sum::<f64>() / run.len() as f64;
                out.push(GapClass {
                    gap,
                    span: run[run.len() - 1].0 - run[0].0,
                    pairs: run.iter().map(|&(_, m, n)| (m, n)).collect(),
                });
            }
            start = i;
        }
    }
    out
}
