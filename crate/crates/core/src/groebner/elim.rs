use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::{BaseOrder, MonomialOrder};
use crate::poly::Poly;
use crate::vars::{same_table, VarTable};

use super::{buchberger, Ideal};

pub(super) fn eliminate(ideal: &Ideal, keep: &[usize]) -> Result<Ideal> {
    let table = ideal.table();
    let n = table.len();
    if let Some(&bad) = keep.iter().find(|&&k| k >= n) {
        return Err(Error::usage(format!(
            "variable index {bad} is outside the table"
        )));
    }
    let mut kept = vec![false; n];
    for &k in keep {
        kept[k] = true;
    }
    let elim: Vec<usize> = (0..n).filter(|&i| !kept[i]).collect();
    if elim.is_empty() {
        return Ok(ideal.clone());
    }
    let order = MonomialOrder::elimination(n, &elim, BaseOrder::DegRevLex, BaseOrder::DegRevLex);
    let gb = buchberger(ideal.generators(), &order)?;
    let survivors: Vec<Poly> = gb
        .into_iter()
        .filter(|g| g.support().iter().all(|&i| kept[i]))
        .collect();
    Ideal::new(table, survivors, ideal.order().clone())
}

/// `{ f ∈ K[target] : f ∘ map ∈ ideal }` for a polynomial map whose
/// components live in the ideal's table.
///
/// Forms the graph ideal `ideal + ⟨y_j − map_j⟩` over `target` extended by a
/// copy of the source variables, then eliminates the copy.
pub fn preimage_under_map(ideal: &Ideal, map: &[Poly], target: &Arc<VarTable>) -> Result<Ideal> {
    let source = ideal.table();
    if map.len() != target.len() {
        return Err(Error::usage(format!(
            "map has {} components but the target table has {} variables",
            map.len(),
            target.len()
        )));
    }
    for f in map {
        if !same_table(f.table(), source) {
            return Err(Error::usage(
                "map components must live in the ideal's table",
            ));
        }
    }
    let m = target.len();
    let aux: Vec<String> = source.names().iter().map(|s| format!("{s}'")).collect();
    let joint = target.with_aux(&aux)?;
    let to_joint: Vec<Option<usize>> = (0..source.len()).map(|i| Some(m + i)).collect();
    let mut gens = Vec::with_capacity(ideal.generators().len() + m);
    for g in ideal.generators() {
        gens.push(g.remap(&joint, &to_joint)?);
    }
    for (j, f) in map.iter().enumerate() {
        gens.push(Poly::var(&joint, j).checked_sub(&f.remap(&joint, &to_joint)?)?);
    }
    let graph = Ideal::with_generators(&joint, gens)?;
    let keep: Vec<usize> = (0..m).collect();
    let elim = eliminate(&graph, &keep)?;
    let back: Vec<Option<usize>> = (0..joint.len()).map(|i| (i < m).then_some(i)).collect();
    elim.remap(target, &back, MonomialOrder::DegRevLex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn polys(t: &Arc<VarTable>, xs: &[&str]) -> Vec<Poly> {
        xs.iter().map(|s| parse_poly(s, t).unwrap()).collect()
    }

    #[test]
    fn projection_of_parabola_has_no_relations() {
        let t = VarTable::holomorphic(&["z", "w"]).unwrap();
        let i = Ideal::with_generators(&t, polys(&t, &["z^2 - w"])).unwrap();
        let e = i.eliminate(&[1]).unwrap();
        assert!(e.is_zero_ideal().unwrap());
    }

    #[test]
    fn linear_elimination() {
        let t = VarTable::holomorphic(&["z", "w"]).unwrap();
        let i = Ideal::with_generators(&t, polys(&t, &["z - w", "z + w"])).unwrap();
        let e = i.eliminate(&[1]).unwrap();
        assert_eq!(e.basis().unwrap(), polys(&t, &["w"]).as_slice());
    }

    #[test]
    fn keep_everything_is_identity() {
        let t = VarTable::holomorphic(&["z", "w"]).unwrap();
        let i = Ideal::with_generators(&t, polys(&t, &["z^2 - w*z"])).unwrap();
        assert!(i.eliminate(&[0, 1]).unwrap().same_ideal(&i).unwrap());
    }

    #[test]
    fn preimages_under_fold_map() {
        let src = VarTable::holomorphic(&["z", "w"]).unwrap();
        let tgt = VarTable::holomorphic(&["zt", "wt"]).unwrap();
        let map = polys(&src, &["z^2", "w"]);
        let i = Ideal::with_generators(&src, polys(&src, &["z^2"])).unwrap();
        let p = preimage_under_map(&i, &map, &tgt).unwrap();
        assert_eq!(p.basis().unwrap(), polys(&tgt, &["zt"]).as_slice());
        let i = Ideal::with_generators(&src, polys(&src, &["w"])).unwrap();
        let p = preimage_under_map(&i, &map, &tgt).unwrap();
        assert_eq!(p.basis().unwrap(), polys(&tgt, &["wt"]).as_slice());
    }

    #[test]
    fn preimage_under_identity() {
        let src = VarTable::holomorphic(&["z", "w"]).unwrap();
        let i = Ideal::with_generators(&src, polys(&src, &["z*w - w^3", "z^2"])).unwrap();
        let id = polys(&src, &["z", "w"]);
        let p = preimage_under_map(&i, &id, &src).unwrap();
        assert!(p.same_ideal(&i).unwrap());
    }

    #[test]
    fn arity_mismatch() {
        let src = VarTable::holomorphic(&["z", "w"]).unwrap();
        let i = Ideal::zero(&src);
        assert!(preimage_under_map(&i, &polys(&src, &["z"]), &src).is_err());
    }
}
