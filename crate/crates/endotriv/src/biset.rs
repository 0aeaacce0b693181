//! Elementary biset operations on superclass functions: restriction,
//! inflation, deflation, and induction, each evaluated by explicit subgroup
//! and coset bookkeeping.

use std::sync::Arc;

use crate::complex::{quotient_as_group, subgroup_as_group};
use crate::error::{Error, Result};
use crate::group::{is_p_power, GroupData, QuotientGroup};
use crate::superclass::{PSubposet, SuperclassFn};

/// A subgroup H ≤ G promoted to a group in its own right, with the element
/// translation back to the parent.
pub struct SubgroupContext {
    pub data: Arc<GroupData>,
    pub poset: PSubposet,
    /// Parent element index of each context element.
    pub element_map: Vec<usize>,
}

pub fn subgroup_context(parent: &Arc<GroupData>, p: u64, h: usize) -> Result<SubgroupContext> {
    let (data, element_map) = subgroup_as_group(parent, h)?;
    let poset = PSubposet::new(&data, p)?;
    Ok(SubgroupContext {
        data,
        poset,
        element_map,
    })
}

impl SubgroupContext {
    /// Lattice index in the parent of a subgroup given by context element
    /// indices.
    fn parent_subgroup(&self, parent: &GroupData, members: &[usize]) -> usize {
        let mut mapped: Vec<usize> = members.iter().map(|&e| self.element_map[e]).collect();
        mapped.sort_unstable();
        parent
            .lattice
            .subgroup_index(&mapped)
            .expect("subgroup of H is a subgroup of G")
    }

    /// Context lattice index of a subgroup given by parent element indices
    /// (which must all lie in H).
    pub fn context_subgroup(&self, parent: &GroupData, members: &[usize]) -> usize {
        let mut mapped: Vec<usize> = members
            .iter()
            .map(|&e| {
                self.data
                    .group
                    .element_index(parent.group.element(e))
                    .expect("element lies in H")
            })
            .collect();
        mapped.sort_unstable();
        self.data
            .lattice
            .subgroup_index(&mapped)
            .expect("closed subset is a subgroup of H")
    }
}

/// The quotient G/N promoted to a group, with coset translations.
pub struct QuotientContext {
    pub data: Arc<GroupData>,
    pub poset: PSubposet,
    pub quotient: QuotientGroup,
    /// Coset index of each context element.
    pub element_to_coset: Vec<usize>,
    /// Context element index of each coset.
    pub coset_to_element: Vec<usize>,
}

pub fn quotient_context(parent: &Arc<GroupData>, p: u64, n: usize) -> Result<QuotientContext> {
    let (data, quotient, element_to_coset) =
        quotient_as_group(parent, parent.lattice.full_index(), n)?;
    let poset = PSubposet::new(&data, p)?;
    let mut coset_to_element = vec![0usize; quotient.order];
    for (e, &c) in element_to_coset.iter().enumerate() {
        coset_to_element[c] = e;
    }
    Ok(QuotientContext {
        data,
        poset,
        quotient,
        element_to_coset,
        coset_to_element,
    })
}

impl QuotientContext {
    /// Context lattice index of the image LN/N of a parent subgroup L.
    fn image_subgroup(&self, parent: &GroupData, l: usize) -> usize {
        let mut cosets: Vec<usize> = parent.lattice.subgroups[l]
            .members
            .iter()
            .map(|&e| self.quotient.coset_of(e).expect("element of G has a coset"))
            .collect();
        cosets.sort_unstable();
        cosets.dedup();
        let mut members: Vec<usize> = cosets.iter().map(|&c| self.coset_to_element[c]).collect();
        members.sort_unstable();
        self.data
            .lattice
            .subgroup_index(&members)
            .expect("image of a subgroup is a subgroup")
    }

    /// Parent lattice index of the preimage of a context subgroup.
    fn preimage_subgroup(&self, parent: &GroupData, sub: usize) -> usize {
        let mut members: Vec<usize> = self.data.lattice.subgroups[sub]
            .members
            .iter()
            .flat_map(|&e| self.quotient.cosets[self.element_to_coset[e]].clone())
            .collect();
        members.sort_unstable();
        parent
            .lattice
            .subgroup_index(&members)
            .expect("preimage of a subgroup is a subgroup")
    }
}

/// Restriction along H ≤ G: the value at an H-class is the value at its
/// G-class.
pub fn res(
    parent: &GroupData,
    parent_poset: &PSubposet,
    ctx: &SubgroupContext,
    f: &SuperclassFn,
) -> Result<SuperclassFn> {
    if f.values.len() != parent_poset.len() {
        return Err(Error::LengthMismatch {
            got: f.values.len(),
            want: parent_poset.len(),
        });
    }
    let values = (0..ctx.poset.len())
        .map(|i| {
            let members = ctx.data.lattice.subgroups[ctx.poset.reps[i]].members.clone();
            let g_sub = ctx.parent_subgroup(parent, &members);
            let pos = parent_poset
                .position_of_subgroup(parent, g_sub)
                .expect("p-subgroup of H is a p-subgroup of G");
            f.values[pos]
        })
        .collect();
    Ok(SuperclassFn::new(f.p, values))
}

/// Inflation along G → G/N: the value at a G-class [L] is the value at
/// [LN/N].
pub fn inf(
    parent: &GroupData,
    parent_poset: &PSubposet,
    ctx: &QuotientContext,
    f: &SuperclassFn,
) -> Result<SuperclassFn> {
    if f.values.len() != ctx.poset.len() {
        return Err(Error::LengthMismatch {
            got: f.values.len(),
            want: ctx.poset.len(),
        });
    }
    let values = (0..parent_poset.len())
        .map(|i| {
            let image = ctx.image_subgroup(parent, parent_poset.reps[i]);
            let pos = ctx
                .poset
                .position_of_subgroup(&ctx.data, image)
                .expect("image of a p-subgroup is a p-subgroup");
            f.values[pos]
        })
        .collect();
    Ok(SuperclassFn::new(f.p, values))
}

/// Deflation along a normal p-subgroup N: the value at [L/N] is the value at
/// [L]. Rejects N that is not a p-group, where the mark formula would not
/// match the Brauer construction.
pub fn def(
    parent: &GroupData,
    parent_poset: &PSubposet,
    ctx: &QuotientContext,
    n: usize,
    f: &SuperclassFn,
) -> Result<SuperclassFn> {
    if !is_p_power(parent.lattice.subgroups[n].order, f.p) {
        return Err(Error::NotNormalPSubgroup);
    }
    if f.values.len() != parent_poset.len() {
        return Err(Error::LengthMismatch {
            got: f.values.len(),
            want: parent_poset.len(),
        });
    }
    let values = (0..ctx.poset.len())
        .map(|i| {
            let preimage = ctx.preimage_subgroup(parent, ctx.poset.reps[i]);
            let pos = parent_poset
                .position_of_subgroup(parent, preimage)
                .expect("preimage of a p-subgroup over a p-kernel is a p-subgroup");
            f.values[pos]
        })
        .collect();
    Ok(SuperclassFn::new(f.p, values))
}

/// Induction along H ≤ G by the double-coset sum
/// `(ind f)(L) = Σ_{x ∈ [L\G/H]} f(H ∩ x⁻¹Lx)`.
pub fn ind(
    parent: &GroupData,
    parent_poset: &PSubposet,
    ctx: &SubgroupContext,
    h: usize,
    f: &SuperclassFn,
) -> Result<SuperclassFn> {
    if f.values.len() != ctx.poset.len() {
        return Err(Error::LengthMismatch {
            got: f.values.len(),
            want: ctx.poset.len(),
        });
    }
    let h_members = &parent.lattice.subgroups[h].members;
    let values = (0..parent_poset.len())
        .map(|i| {
            let l = parent_poset.reps[i];
            let mut total = 0i64;
            for x in parent.double_coset_reps(l, h) {
                let xinv = parent.group.inv(x);
                let mut conj: Vec<usize> = parent.lattice.subgroups[l]
                    .members
                    .iter()
                    .map(|&e| parent.group.conj(xinv, e))
                    .collect();
                conj.sort_unstable();
                let intersection: Vec<usize> = conj
                    .into_iter()
                    .filter(|e| h_members.binary_search(e).is_ok())
                    .collect();
                let sub = ctx.context_subgroup(parent, &intersection);
                let pos = ctx
                    .poset
                    .position_of_subgroup(&ctx.data, sub)
                    .expect("intersection with a p-group is a p-group");
                total += f.values[pos];
            }
            total
        })
        .collect();
    Ok(SuperclassFn::new(f.p, values))
}
