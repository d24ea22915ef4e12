use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use super::group::FgAbGroup;
use super::matrix::IntMatrix;
use super::smith::{self, snf};
use crate::error::{Error, Result};

/// A homomorphism between groups in normal form, given by its matrix on the
/// normal-form generators (codomain generators × domain generators).
///
/// Construction validates that torsion relations are respected: a domain
/// generator of order d must map to an element killed by d. Entries in rows
/// of torsion generators are stored reduced into [0, order).
#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    domain: FgAbGroup,
    codomain: FgAbGroup,
    matrix: IntMatrix,
}

/// Relation lattice of the normal-form presentation: one column dᵢ·eᵢ per
/// torsion generator, inside Z^(generator count).
fn relation_matrix(g: &FgAbGroup) -> IntMatrix {
    let n = g.generator_count();
    let t = g.invariant_factors().len();
    let mut r = IntMatrix::zero(n, t);
    for (k, d) in g.invariant_factors().iter().enumerate() {
        r[(g.free_rank() + k, k)] = d.clone();
    }
    r
}

/// Present the quotient lattice(basis)/lattice(relations) in normal form.
///
/// `basis` has full column rank (its columns generate the subgroup);
/// `relations` columns must lie inside the span of `basis`. Returns the
/// abstract group together with one ambient-coordinate column per
/// normal-form generator (free generators first, then torsion ascending).
pub(crate) fn quotient_presentation(
    basis: &IntMatrix,
    relations: &IntMatrix,
) -> Result<(FgAbGroup, IntMatrix)> {
    let r = basis.cols();
    // Express the relations over the basis.
    let mut c_cols: Vec<Vec<BigInt>> = Vec::with_capacity(relations.cols());
    for j in 0..relations.cols() {
        let col = relations.column(j);
        let sol = smith::solve(basis, &col)?.ok_or_else(|| {
            Error::validation("relation lies outside the span of the subgroup basis")
        })?;
        c_cols.push(sol);
    }
    let c = IntMatrix::from_columns(r, &c_cols)?;
    let dec = snf(&c);
    let rank = dec.rank();
    let u_inv = dec.u.inverse_unimodular()?;
    let new_gens = basis.mul(&u_inv)?;

    let mut free_cols: Vec<Vec<BigInt>> = Vec::new();
    let mut torsion_cols: Vec<Vec<BigInt>> = Vec::new();
    let mut factors: Vec<BigInt> = Vec::new();
    for i in 0..r {
        let order = if i < rank {
            dec.s[(i, i)].clone()
        } else {
            BigInt::zero()
        };
        if order.is_zero() {
            free_cols.push(new_gens.column(i));
        } else if order > BigInt::from(1) {
            torsion_cols.push(new_gens.column(i));
            factors.push(order);
        } // order 1: generator is trivial in the quotient
    }
    let group = FgAbGroup::new(free_cols.len(), factors)?;
    free_cols.extend(torsion_cols);
    let gens = IntMatrix::from_columns(basis.rows(), &free_cols)?;
    Ok((group, gens))
}

impl GroupHom {
    pub fn new(domain: FgAbGroup, codomain: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != codomain.generator_count() || matrix.cols() != domain.generator_count()
        {
            return Err(Error::validation(format!(
                "hom matrix shape {}x{} does not match codomain {} x domain {} generators",
                matrix.rows(),
                matrix.cols(),
                codomain.generator_count(),
                domain.generator_count()
            )));
        }
        let rel = relation_matrix(&codomain);
        for j in 0..matrix.cols() {
            let d = domain.generator_order(j);
            if d.is_zero() {
                continue;
            }
            let scaled: Vec<BigInt> = matrix.column(j).iter().map(|e| e * &d).collect();
            if !smith::lattice_contains(&rel, &scaled)? {
                return Err(Error::validation(format!(
                    "ill-defined homomorphism: generator {j} has order {d} but {d} times its image does not vanish in {codomain}"
                )));
            }
        }
        let mut hom = GroupHom {
            domain,
            codomain,
            matrix,
        };
        hom.reduce();
        Ok(hom)
    }

    /// Reduce entries in torsion rows into the canonical range [0, order).
    fn reduce(&mut self) {
        for i in 0..self.matrix.rows() {
            let order = self.codomain.generator_order(i);
            if order.is_zero() {
                continue;
            }
            for j in 0..self.matrix.cols() {
                let mut e = &self.matrix[(i, j)] % &order;
                if e.is_negative() {
                    e += &order;
                }
                self.matrix[(i, j)] = e;
            }
        }
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        GroupHom {
            domain: g.clone(),
            codomain: g.clone(),
            matrix: IntMatrix::identity(g.generator_count()),
        }
    }

    pub fn zero(domain: &FgAbGroup, codomain: &FgAbGroup) -> Self {
        GroupHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: IntMatrix::zero(codomain.generator_count(), domain.generator_count()),
        }
    }

    pub fn domain(&self) -> &FgAbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgAbGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_zero_hom(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Apply to an element in domain generator coordinates.
    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        self.matrix.apply(v)
    }

    /// g ∘ h (h first). Matrix product, reduced modulo codomain torsion.
    pub fn compose(g: &GroupHom, h: &GroupHom) -> Result<GroupHom> {
        if h.codomain != g.domain {
            return Err(Error::validation(format!(
                "cannot compose: intermediate groups differ ({} vs {})",
                h.codomain, g.domain
            )));
        }
        GroupHom::new(
            h.domain.clone(),
            g.codomain.clone(),
            g.matrix.mul(&h.matrix)?,
        )
    }

    /// Cokernel: codomain / image, in invariant-factor normal form.
    pub fn cokernel(&self) -> Result<FgAbGroup> {
        let rel = relation_matrix(&self.codomain);
        let full = self.matrix.hconcat(&rel)?;
        let dec = snf(&full);
        let n = self.codomain.generator_count();
        let mut orders: Vec<BigInt> = dec.diagonal();
        orders.extend(std::iter::repeat(BigInt::zero()).take(n - dec.rank()));
        Ok(FgAbGroup::from_cyclic_orders(&orders))
    }

    /// Image as an abstract group.
    pub fn image(&self) -> Result<FgAbGroup> {
        let rel = relation_matrix(&self.codomain);
        let span = smith::lattice_basis(&self.matrix.hconcat(&rel)?);
        let (group, _) = quotient_presentation(&span, &rel)?;
        Ok(group)
    }

    /// Kernel, together with its inclusion into the domain.
    pub fn kernel(&self) -> Result<(FgAbGroup, GroupHom)> {
        let pre = self.preimage_lattice()?;
        let rel_dom = relation_matrix(&self.domain);
        let (group, gens) = quotient_presentation(&pre, &rel_dom)?;
        let inclusion = GroupHom::new(group.clone(), self.domain.clone(), gens)?;
        Ok((group, inclusion))
    }

    /// Basis of the lattice {x : M·x lies in the codomain relation lattice},
    /// i.e. coordinates of elements mapping to zero.
    pub(crate) fn preimage_lattice(&self) -> Result<IntMatrix> {
        let m = self.domain.generator_count();
        let rel = relation_matrix(&self.codomain);
        let stacked = self.matrix.hconcat(&rel)?;
        let ker = smith::kernel_basis(&stacked);
        let projected: Vec<Vec<BigInt>> = (0..ker.cols())
            .map(|j| ker.column(j)[..m].to_vec())
            .collect();
        let proj = IntMatrix::from_columns(m, &projected)?;
        Ok(smith::lattice_basis(&proj))
    }

    /// The image of this hom as a sublattice of the codomain generator
    /// space (always containing the codomain relations).
    pub(crate) fn image_lattice(&self) -> Result<IntMatrix> {
        let rel = relation_matrix(&self.codomain);
        Ok(smith::lattice_basis(&self.matrix.hconcat(&rel)?))
    }

    /// Exactness at a node: image of `incoming` equals kernel of `outgoing`
    /// as subgroups of the shared middle group.
    pub fn exact_at(incoming: &GroupHom, outgoing: &GroupHom) -> Result<bool> {
        if incoming.codomain != outgoing.domain {
            return Err(Error::validation(
                "exactness check: middle groups do not match",
            ));
        }
        let img = incoming.image_lattice()?;
        let rel = relation_matrix(&outgoing.domain);
        let ker = outgoing.preimage_lattice()?.hconcat(&rel)?;
        smith::lattice_eq(&img, &ker)
    }
}

impl Serialize for GroupHom {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("GroupHom", 3)?;
        s.serialize_field("domain", &self.domain)?;
        s.serialize_field("codomain", &self.codomain)?;
        s.serialize_field("matrix", &self.matrix.to_string())?;
        s.end()
    }
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} -> {}", self.matrix, self.domain, self.codomain)
    }
}
