//! Solvers for unknown corners of cyclic exact diagrams.
//!
//! Only the split case is decided: when the quotient of the short exact
//! sequence around an unknown node is free, the node is its direct sum
//! with the subgroup. Anything else is an explicit refusal.

use serde::Serialize;

use super::diagram::{FactFlag, SixTermDiagram, INDEX_MAP_SURJECTIVE};
use crate::error::{Error, Result};
use crate::fgab::FgAbGroup;

/// A solved node with the two exactness data it was assembled from and the
/// provenance chain of the derivation.
#[derive(Clone, Debug, Serialize)]
pub struct SolvedNode {
    pub index: usize,
    pub label: String,
    pub group: FgAbGroup,
    /// C = cokernel of the arrow two steps back (the subgroup).
    pub subgroup: FgAbGroup,
    /// K = kernel of the arrow one step ahead (the quotient).
    pub quotient: FgAbGroup,
    pub provenance: Vec<String>,
}

/// Solve the group at `index` from its cyclic neighborhood.
///
/// Requires: the node and its two adjacent arrows unknown; the arrow `a`
/// preceding the incoming arrow and the arrow `b` following the outgoing
/// arrow known together with their endpoint groups. By exactness the node X
/// sits in 0 → coker(a) → X → ker(b) → 0; when ker(b) is free the sequence
/// splits. When ker(b) has torsion the extension class is undetermined and
/// an `AmbiguousExtension` error carries both halves instead of a guess.
pub fn solve_unknown(diagram: &SixTermDiagram, index: usize) -> Result<SolvedNode> {
    let i = index % 6;
    if diagram.node(i).is_some() {
        return Err(Error::validation(format!(
            "node {i} is already known; refusing to re-solve"
        )));
    }
    for adj in [(i + 5) % 6, i] {
        if diagram.arrow(adj).is_some() {
            return Err(Error::validation(format!(
                "arrow {adj} adjacent to the unknown node {i} must be unknown"
            )));
        }
    }
    let a_idx = (i + 4) % 6;
    let b_idx = (i + 1) % 6;
    let a = diagram.arrow(a_idx).ok_or_else(|| {
        Error::validation(format!(
            "cannot solve node {i}: arrow {a_idx} (preceding the incoming arrow) is unknown"
        ))
    })?;
    let b = diagram.arrow(b_idx).ok_or_else(|| {
        Error::validation(format!(
            "cannot solve node {i}: arrow {b_idx} (following the outgoing arrow) is unknown"
        ))
    })?;

    let c = a.cokernel()?;
    let (k, _) = b.kernel()?;
    let mut provenance = vec![
        format!(
            "exactness places node {i} ({}) in the extension 0 -> C -> X -> K -> 0",
            diagram.label(i)
        ),
        format!(
            "C = coker(arrow {a_idx}: {} -> {}) = {c}",
            a.domain(),
            a.codomain()
        ),
        format!(
            "K = ker(arrow {b_idx}: {} -> {}) = {k}",
            b.domain(),
            b.codomain()
        ),
    ];
    if k.has_torsion() {
        return Err(Error::AmbiguousExtension {
            subgroup: c,
            quotient: k,
        });
    }
    let group = FgAbGroup::direct_sum(&[c.clone(), k.clone()]);
    provenance.push(format!(
        "K is free, so the extension splits: X = C + K = {group}"
    ));
    Ok(SolvedNode {
        index: i,
        label: diagram.label(i).to_owned(),
        group,
        subgroup: c,
        quotient: k,
        provenance,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SolvedDiagram {
    pub solved: Vec<SolvedNode>,
}

/// Solve every unknown node whose neighborhood admits it. Errors if any
/// unknown node remains unsolvable.
pub fn solve_all(diagram: &SixTermDiagram) -> Result<SolvedDiagram> {
    let unknown = diagram.unknown_nodes();
    if unknown.is_empty() {
        return Err(Error::validation(
            "nothing to solve: all six node groups are known",
        ));
    }
    let mut solved = Vec::new();
    for i in unknown {
        solved.push(solve_unknown(diagram, i)?);
    }
    Ok(SolvedDiagram { solved })
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealSequenceSolution {
    pub k0: FgAbGroup,
    pub k1: FgAbGroup,
    pub steps: Vec<String>,
    pub facts_used: Vec<String>,
}

/// Solve the middle K-groups of an ideal extension
/// 0 → ideal → middle → quotient → 0 from the six-term sequence.
///
/// `k_ideal` and `k_quotient` are (K₀, K₁) pairs. Requires K₁(ideal) = 0.
/// Surjectivity of the index map δ₁ : K₁(quotient) → K₀(ideal) must be
/// supplied as the `index_map_surjective` fact unless K₀(ideal) is trivial,
/// in which case it is automatic. Every step is logged.
pub fn solve_ideal_sequence(
    k_ideal: (&FgAbGroup, &FgAbGroup),
    k_quotient: (&FgAbGroup, &FgAbGroup),
    facts: &[FactFlag],
) -> Result<IdealSequenceSolution> {
    let (i0, i1) = k_ideal;
    let (q0, q1) = k_quotient;
    let mut steps = Vec::new();
    let mut facts_used = Vec::new();

    if !i1.is_trivial() {
        return Err(Error::refusal(format!(
            "K1(ideal) = {i1} is nonzero; this solver only handles ideals with trivial K1"
        )));
    }
    steps.push(format!(
        "K1(ideal) = 0: the exponential map K0(quotient) = {q0} -> K1(ideal) vanishes, so the quotient map is surjective on K0"
    ));

    if i0.is_trivial() {
        steps.push("K0(ideal) = 0: the index map is trivially surjective".into());
    } else if let Some(fact) = facts.iter().find(|f| f.name == INDEX_MAP_SURJECTIVE) {
        facts_used.push(fact.name.clone());
        steps.push(format!(
            "fact `{}`: the index map K1(quotient) = {q1} -> K0(ideal) = {i0} is surjective",
            fact.name
        ));
    } else {
        return Err(Error::MissingFact {
            name: INDEX_MAP_SURJECTIVE.into(),
            explanation: format!(
                "without surjectivity of the index map K1(quotient) = {q1} -> K0(ideal) = {i0}, \
                 the boundary map delta_1 stays unresolved and the middle K-groups are not forced"
            ),
        });
    }
    steps.push(
        "surjective index map: by exactness the inclusion K0(ideal) -> K0(middle) is zero, \
         so the quotient map is injective on K0"
            .into(),
    );
    let k0 = q0.clone();
    steps.push(format!("K0(middle) = K0(quotient) = {k0}"));

    steps.push(
        "K1(ideal) = 0: the quotient map is injective on K1, so K1(middle) = ker(index map)"
            .into(),
    );
    let k1 = if i0.is_trivial() {
        steps.push(format!(
            "the index map lands in the trivial group, so its kernel is all of K1(quotient) = {q1}"
        ));
        q1.clone()
    } else if q1.is_trivial() {
        steps.push("K1(quotient) = 0, so the kernel of the index map is trivial".into());
        FgAbGroup::trivial()
    } else if q1.is_isomorphic(i0) {
        steps.push(format!(
            "a surjection between isomorphic finitely generated abelian groups \
             ({q1} -> {i0}) is an isomorphism, so the index map has trivial kernel"
        ));
        FgAbGroup::trivial()
    } else {
        return Err(Error::refusal(format!(
            "cannot determine ker(index map): K1(quotient) = {q1} surjects onto K0(ideal) = {i0} \
             but the groups are not isomorphic, so the kernel is not forced"
        )));
    };
    steps.push(format!("K1(middle) = {k1}"));

    Ok(IdealSequenceSolution {
        k0,
        k1,
        steps,
        facts_used,
    })
}
