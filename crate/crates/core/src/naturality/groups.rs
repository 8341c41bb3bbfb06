use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use super::{elapsed_ms, NaturalityReport, Subcategory, Survivors};
use crate::error::{Error, Result};
use crate::finite::{FiniteFunction, FiniteGroup};
use crate::operad::{decode_tuple, encode_tuple};
use crate::word::{group_eval, word_enumerate};

/// Natural maps `G^n -> G` for a fixed finite group, compared with the maps
/// realised by short words.
#[derive(Clone, Debug, Serialize)]
pub struct GroupMapsReport {
    pub report: NaturalityReport,
    pub endomorphisms: usize,
    pub natural_maps: usize,
    pub words_checked: usize,
    pub distinct_word_maps: usize,
    /// Every word map commutes with every endomorphism.
    pub words_natural: bool,
    /// Every word map is among the natural maps found.
    pub word_maps_contained: bool,
    /// Natural maps not realised by any enumerated word.
    pub surplus: usize,
}

fn search(
    assigned: &mut Vec<Option<usize>>,
    images: &[Vec<usize>],
    endos: &[FiniteFunction],
    out: &mut Vec<Vec<usize>>,
    order: usize,
) {
    let Some(c) = assigned.iter().position(Option::is_none) else {
        out.push(assigned.iter().map(|v| v.expect("complete")).collect());
        return;
    };
    for v in 0..order {
        let mut trial = assigned.clone();
        if propagate(&mut trial, c, v, images, endos) {
            search(&mut trial, images, endos, out, order);
        }
    }
}

/// Assigns `φ(c) = v` and forces `φ(f(c)) = f(v)` for every endomorphism;
/// false on a contradiction.
fn propagate(assigned: &mut [Option<usize>], c: usize, v: usize, images: &[Vec<usize>], endos: &[FiniteFunction]) -> bool {
    assigned[c] = Some(v);
    let mut queue = vec![(c, v)];
    while let Some((c, v)) = queue.pop() {
        for (f, img) in endos.iter().zip(images) {
            let (c2, v2) = (img[c], f.apply(v));
            match assigned[c2] {
                None => {
                    assigned[c2] = Some(v2);
                    queue.push((c2, v2));
                }
                Some(w) if w != v2 => return false,
                Some(_) => {}
            }
        }
    }
    true
}

/// All maps `G^n -> G` commuting with every group endomorphism of `G`
/// (backtracking with propagation along endomorphisms), together with the
/// maps given by reduced words of length at most `word_length`.
/// Requires `|G| ≤ 6` and `n ≤ 2`.
pub fn finite_group_natural_maps(g: &FiniteGroup, n: usize, word_length: usize) -> Result<GroupMapsReport> {
    let order = g.order();
    if order > 6 || n > 2 {
        return Err(Error::BoundExceeded(format!("group of order {order} in arity {n}; limits are 6 and 2")));
    }
    let start = Instant::now();
    let endos = g.monoid().endomorphisms()?;
    let tuples = order.pow(n as u32);
    let images: Vec<Vec<usize>> = endos
        .iter()
        .map(|f| {
            (0..tuples)
                .map(|c| {
                    let a: Vec<usize> = decode_tuple(order, n, c).iter().map(|&x| f.apply(x)).collect();
                    encode_tuple(order, &a)
                })
                .collect()
        })
        .collect();
    let mut tables = Vec::new();
    search(&mut vec![None; tuples], &images, &endos, &mut tables, order);
    tables.sort();
    let natural: Vec<FiniteFunction> = tables.into_iter().map(|t| FiniteFunction::new(order, t).expect("in range")).collect();

    let commutes = |phi: &FiniteFunction| {
        endos.iter().zip(&images).all(|(f, img)| (0..tuples).all(|c| phi.apply(img[c]) == f.apply(phi.apply(c))))
    };
    let reverified = natural.iter().all(commutes);

    let words = word_enumerate(n, word_length);
    let mut word_maps: BTreeMap<FiniteFunction, String> = BTreeMap::new();
    for w in &words {
        let table = (0..tuples)
            .map(|c| group_eval(w, g, &decode_tuple(order, n, c)))
            .collect::<Result<Vec<_>>>()?;
        word_maps.entry(FiniteFunction::new(order, table)?).or_insert_with(|| w.to_string());
    }
    let words_natural = word_maps.keys().all(commutes);
    let word_maps_contained = word_maps.keys().all(|f| natural.binary_search(f).is_ok());
    let realised = natural.iter().filter(|f| word_maps.contains_key(f)).count();
    let labels = natural.iter().map(|f| word_maps.get(f).cloned().unwrap_or_default()).collect();
    let report = NaturalityReport {
        context: format!("forgetful functor from groups to sets, on a group of order {order}"),
        arity: n,
        subcategory: Subcategory { objects: vec![format!("G (order {order})")], morphisms: endos.len() },
        labels,
        count: Some(natural.len() as u128),
        complete: true,
        method: "backtracking with propagation along endomorphisms".into(),
        reverified,
        elapsed_ms: elapsed_ms(start),
        survivors: Survivors::Functions(natural.clone()),
    };
    Ok(GroupMapsReport {
        report,
        endomorphisms: endos.len(),
        natural_maps: natural.len(),
        words_checked: words.len(),
        distinct_word_maps: word_maps.len(),
        words_natural,
        word_maps_contained,
        surplus: natural.len() - realised,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::FiniteMonoidTable;
    use crate::naturality::natural_maps_bruteforce;

    fn group(m: FiniteMonoidTable) -> FiniteGroup {
        FiniteGroup::new(m).unwrap()
    }

    #[test]
    fn cyclic_two() {
        let r = finite_group_natural_maps(&group(FiniteMonoidTable::cyclic(2).unwrap()), 1, 2).unwrap();
        assert_eq!(r.endomorphisms, 2);
        let tables: Vec<&[usize]> = r.report.survivors.functions().unwrap().iter().map(|f| f.table()).collect();
        assert!(tables.contains(&[0, 1].as_slice()) && tables.contains(&[0, 0].as_slice()));
        assert!(r.word_maps_contained && r.words_natural);
    }

    #[test]
    fn trivial_group() {
        for n in 0..=2 {
            let r = finite_group_natural_maps(&group(FiniteMonoidTable::trivial()), n, 2).unwrap();
            assert_eq!(r.natural_maps, 1);
        }
    }

    #[test]
    fn agrees_with_bruteforce_in_arity_one() {
        for m in [FiniteMonoidTable::cyclic(3).unwrap(), FiniteMonoidTable::symmetric_group(3).unwrap()] {
            let g = group(m.clone());
            let endos = m.endomorphisms().unwrap();
            let brute = natural_maps_bruteforce(m.order(), 1, &endos, 1 << 20).unwrap();
            let r = finite_group_natural_maps(&g, 1, 3).unwrap();
            assert_eq!(r.report.survivors.functions().unwrap(), brute.as_slice());
        }
    }

    #[test]
    fn s3_words_are_natural() {
        let g = group(FiniteMonoidTable::symmetric_group(3).unwrap());
        let r = finite_group_natural_maps(&g, 2, 3).unwrap();
        assert_eq!(r.endomorphisms, 10);
        assert!(r.words_natural && r.word_maps_contained && r.report.reverified);
    }
}
