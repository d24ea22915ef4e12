use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fgab::{FgAbGroup, GroupHom, IntMatrix};

/// Name of the one input fact this crate consumes: surjectivity of the
/// index map in the ideal sequence of the symbol algebra.
pub const INDEX_MAP_SURJECTIVE: &str = "index_map_surjective";

/// An input fact injected into a solver rather than computed. Consumed only
/// where explicitly documented; every use is logged in the provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactFlag {
    pub name: String,
    pub assertion: String,
}

impl FactFlag {
    pub fn new(name: impl Into<String>, assertion: impl Into<String>) -> Self {
        FactFlag {
            name: name.into(),
            assertion: assertion.into(),
        }
    }

    /// The surjectivity of the index map K₁(quotient) → K₀(ideal), an input
    /// fact expressing the existence of an index-one Fredholm element.
    pub fn index_map_surjective() -> Self {
        FactFlag::new(
            INDEX_MAP_SURJECTIVE,
            "the index map K1(quotient) -> K0(ideal) is surjective \
             (there is a Fredholm element of index 1)",
        )
    }
}

/// Six optional nodes and six optional arrows of a cyclic diagram; arrow i
/// goes from node i to node i+1 mod 6. Values are immutable after
/// construction apart from the explicit `with_*` builders.
#[derive(Clone, Debug)]
pub struct SixTermDiagram {
    nodes: [Option<FgAbGroup>; 6],
    arrows: [Option<GroupHom>; 6],
    labels: [String; 6],
}

impl SixTermDiagram {
    pub fn empty(labels: [&str; 6]) -> Self {
        SixTermDiagram {
            nodes: Default::default(),
            arrows: Default::default(),
            labels: labels.map(str::to_owned),
        }
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i % 6]
    }

    pub fn node(&self, i: usize) -> Option<&FgAbGroup> {
        self.nodes[i % 6].as_ref()
    }

    pub fn arrow(&self, i: usize) -> Option<&GroupHom> {
        self.arrows[i % 6].as_ref()
    }

    /// Install a node group; rejected if an adjacent arrow already pins a
    /// different group there.
    pub fn with_node(mut self, i: usize, group: FgAbGroup) -> Result<Self> {
        let i = i % 6;
        if let Some(a) = &self.arrows[i] {
            if a.domain() != &group {
                return Err(Error::validation(format!(
                    "node {i} group {group} conflicts with the domain {} of arrow {i}",
                    a.domain()
                )));
            }
        }
        if let Some(a) = &self.arrows[(i + 5) % 6] {
            if a.codomain() != &group {
                return Err(Error::validation(format!(
                    "node {i} group {group} conflicts with the codomain {} of arrow {}",
                    a.codomain(),
                    (i + 5) % 6
                )));
            }
        }
        self.nodes[i] = Some(group);
        Ok(self)
    }

    /// Install an arrow; endpoints must agree with any present node groups.
    pub fn with_arrow(mut self, i: usize, hom: GroupHom) -> Result<Self> {
        let i = i % 6;
        if let Some(g) = &self.nodes[i] {
            if hom.domain() != g {
                return Err(Error::validation(format!(
                    "arrow {i} domain {} does not match node {i} group {g}",
                    hom.domain()
                )));
            }
        }
        if let Some(g) = &self.nodes[(i + 1) % 6] {
            if hom.codomain() != g {
                return Err(Error::validation(format!(
                    "arrow {i} codomain {} does not match node {} group {g}",
                    hom.codomain(),
                    (i + 1) % 6
                )));
            }
        }
        self.arrows[i] = Some(hom);
        Ok(self)
    }

    pub fn is_complete(&self) -> bool {
        self.nodes.iter().all(Option::is_some) && self.arrows.iter().all(Option::is_some)
    }

    pub fn unknown_nodes(&self) -> Vec<usize> {
        (0..6).filter(|&i| self.nodes[i].is_none()).collect()
    }

    /// Exactness audit at every node. Requires a complete diagram.
    pub fn verify_exactness(&self) -> Result<ExactnessReport> {
        if !self.is_complete() {
            let missing_nodes = self.unknown_nodes();
            let missing_arrows: Vec<usize> =
                (0..6).filter(|&i| self.arrows[i].is_none()).collect();
            return Err(Error::validation(format!(
                "incomplete diagram: missing nodes {missing_nodes:?}, missing arrows {missing_arrows:?}"
            )));
        }
        let mut nodes = Vec::with_capacity(6);
        for i in 0..6 {
            let incoming = self.arrows[(i + 5) % 6].as_ref().unwrap();
            let outgoing = self.arrows[i].as_ref().unwrap();
            let exact = GroupHom::exact_at(incoming, outgoing)?;
            nodes.push(NodeExactness {
                index: i,
                label: self.labels[i].clone(),
                exact,
            });
        }
        Ok(ExactnessReport {
            all_exact: nodes.iter().all(|n| n.exact),
            nodes,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeExactness {
    pub index: usize,
    pub label: String,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub all_exact: bool,
    pub nodes: Vec<NodeExactness>,
}

/// Combine two homs with a common codomain into the difference map on the
/// direct sum: (x, y) ↦ h₂(y) − h₁(x). Returns the normal-form sum group
/// together with the hom.
pub fn difference_on_sum(h1: &GroupHom, h2: &GroupHom) -> Result<(FgAbGroup, GroupHom)> {
    if h1.codomain() != h2.codomain() {
        return Err(Error::validation(format!(
            "difference map endpoints mismatch: {} vs {}",
            h1.codomain(),
            h2.codomain()
        )));
    }
    let (m1, m2) = (
        h1.domain().generator_count(),
        h2.domain().generator_count(),
    );
    // Concatenated presentation of the direct sum.
    let mut orders: Vec<BigInt> = Vec::new();
    for j in 0..m1 {
        orders.push(h1.domain().generator_order(j));
    }
    for j in 0..m2 {
        orders.push(h2.domain().generator_order(j));
    }
    let mut relations = IntMatrix::zero(m1 + m2, 0);
    for (idx, d) in orders.iter().enumerate() {
        if !num_traits::Zero::is_zero(d) {
            let mut col = IntMatrix::zero(m1 + m2, 1);
            col[(idx, 0)] = d.clone();
            relations = relations.hconcat(&col)?;
        }
    }
    let (sum, gens) =
        crate::fgab::hom::quotient_presentation(&IntMatrix::identity(m1 + m2), &relations)?;

    // Difference matrix on the concatenated coordinates: [-M1 | M2].
    let n = h1.codomain().generator_count();
    let mut diff = IntMatrix::zero(n, m1 + m2);
    for i in 0..n {
        for j in 0..m1 {
            diff[(i, j)] = -h1.matrix()[(i, j)].clone();
        }
        for j in 0..m2 {
            diff[(i, m1 + j)] = h2.matrix()[(i, j)].clone();
        }
    }
    let matrix = diff.mul(&gens)?;
    let hom = GroupHom::new(sum.clone(), h1.codomain().clone(), matrix)?;
    Ok((sum, hom))
}

/// Assemble the six-term Mayer–Vietoris diagram of a pullback square from
/// the four induced restriction maps. The difference arrows π₂* − π₁* are
/// installed in degrees 0 and 1; the pullback corners and the boundary
/// arrows are left unknown.
///
/// `k0_maps` and `k1_maps` are (π₁*, π₂*) in the respective degree.
pub fn mayer_vietoris_assemble(
    k0_maps: (&GroupHom, &GroupHom),
    k1_maps: (&GroupHom, &GroupHom),
    labels: [&str; 6],
) -> Result<SixTermDiagram> {
    let (sum0, diff0) = difference_on_sum(k0_maps.0, k0_maps.1)?;
    let (sum1, diff1) = difference_on_sum(k1_maps.0, k1_maps.1)?;
    SixTermDiagram::empty(labels)
        .with_node(1, sum0)?
        .with_node(2, k0_maps.0.codomain().clone())?
        .with_node(4, sum1)?
        .with_node(5, k1_maps.0.codomain().clone())?
        .with_arrow(1, diff0)?
        .with_arrow(4, diff1)
}
