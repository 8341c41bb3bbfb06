use std::time::Instant;

use serde::Serialize;

use super::sets::natural_maps_bruteforce;
use super::{elapsed_ms, NaturalityReport, Subcategory, Survivors};
use crate::error::{Error, Result};
use crate::finite::{FiniteFunction, FiniteMonoidTable};

/// Natural endomorphisms of the forgetful functor from `M`-sets to sets,
/// computed on the free `M`-set `M`, compared with `M` itself.
#[derive(Clone, Debug, Serialize)]
pub struct MonoidReconstruction {
    pub report: NaturalityReport,
    /// Number of `M`-set endomorphisms of `M` found by brute force.
    pub mset_endomorphisms: usize,
    /// `unit_map[m]` is the survivor equal to left multiplication by `m`.
    pub unit_map: Vec<Option<usize>>,
    pub bijective: bool,
    pub multiplicative: bool,
    /// Survivor composition: `composition[i][j]` is the index of `s_i ∘ s_j`.
    pub composition: Vec<Vec<Option<usize>>>,
    pub isomorphic: bool,
}

/// Requires `|M| ≤ 6`.
pub fn monoid_reconstruction(m: &FiniteMonoidTable) -> Result<MonoidReconstruction> {
    let order = m.order();
    if order > 6 {
        return Err(Error::BoundExceeded(format!("monoid of order {order} > 6")));
    }
    let start = Instant::now();
    let equivariant = |psi: &FiniteFunction| (0..order).all(|a| (0..order).all(|x| psi.apply(m.mul(a, x)) == m.mul(a, psi.apply(x))));
    let endos: Vec<FiniteFunction> = FiniteFunction::all(order, order).into_iter().filter(|psi| equivariant(psi)).collect();
    let survivors = natural_maps_bruteforce(order, 1, &endos, 1 << 20)?;
    let left = |a: usize| FiniteFunction::new(order, (0..order).map(|x| m.mul(a, x)).collect()).expect("in range");
    let unit_map: Vec<Option<usize>> = (0..order).map(|a| survivors.iter().position(|s| *s == left(a))).collect();
    let mut hit: Vec<usize> = unit_map.iter().flatten().copied().collect();
    hit.sort_unstable();
    hit.dedup();
    let bijective = unit_map.iter().all(Option::is_some) && hit.len() == order && survivors.len() == order;
    let composition: Vec<Vec<Option<usize>>> = survivors
        .iter()
        .map(|s| {
            survivors
                .iter()
                .map(|t| s.after(t).ok().and_then(|st| survivors.iter().position(|u| *u == st)))
                .collect()
        })
        .collect();
    let multiplicative = bijective
        && (0..order).all(|a| {
            (0..order).all(|b| composition[unit_map[a].unwrap()][unit_map[b].unwrap()] == unit_map[m.mul(a, b)])
        });
    let isomorphic = bijective && multiplicative && unit_map[m.unit()].is_some_and(|u| survivors[u] == FiniteFunction::identity(order));
    let reverified = survivors
        .iter()
        .all(|phi| endos.iter().all(|psi| phi.after(psi).ok() == psi.after(phi).ok()));
    let labels = survivors
        .iter()
        .map(|s| match (0..order).find(|&a| left(a) == *s) {
            Some(a) => format!("λ{a}"),
            None => "other".into(),
        })
        .collect();
    let report = NaturalityReport {
        context: "forgetful functor from M-sets to sets".into(),
        arity: 1,
        subcategory: Subcategory { objects: vec!["M (free M-set on one generator)".into()], morphisms: endos.len() },
        labels,
        count: Some(survivors.len() as u128),
        survivors: Survivors::Functions(survivors),
        complete: true,
        method: "exhaustive enumeration of M-set endomorphisms and candidate maps".into(),
        reverified,
        elapsed_ms: elapsed_ms(start),
    };
    Ok(MonoidReconstruction {
        report,
        mset_endomorphisms: endos.len(),
        unit_map,
        bijective,
        multiplicative,
        composition,
        isomorphic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let t = monoid_reconstruction(&FiniteMonoidTable::trivial()).unwrap();
        assert!(t.isomorphic && t.report.survivors.len() == 1);
        let z2 = monoid_reconstruction(&FiniteMonoidTable::cyclic(2).unwrap()).unwrap();
        assert!(z2.isomorphic && z2.report.survivors.len() == 2);
        // {1, a, b} with a·x = a, b·x = b
        let lz = FiniteMonoidTable::new(vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]], 0).unwrap();
        let r = monoid_reconstruction(&lz).unwrap();
        assert!(r.isomorphic && r.report.survivors.len() == 3);
        let s3 = monoid_reconstruction(&FiniteMonoidTable::symmetric_group(3).unwrap()).unwrap();
        assert!(s3.isomorphic && s3.report.reverified);
    }
}
