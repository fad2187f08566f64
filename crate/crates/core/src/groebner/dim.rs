use crate::error::{Error, Result};
use crate::monomial::Monomial;

use super::Ideal;

/// Krull dimension of `R/I` together with the zero-dimensionality flag and,
/// when zero-dimensional, the number of standard monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimReport {
    /// `-1` for the unit ideal.
    pub krull_dim: i64,
    pub zero_dimensional: bool,
    pub colength: Option<u64>,
}

impl DimReport {
    pub fn is_unit(&self) -> bool {
        self.krull_dim < 0
    }
}

const MAX_STANDARD_MONOMIALS: u128 = 50_000_000;

fn support_mask(m: &Monomial) -> u64 {
    m.support().fold(0u64, |acc, i| acc | (1 << i))
}

/// Largest `|S|` such that no monomial has its support inside `S`; `-1` if
/// some monomial is `1`.
pub fn krull_dim_of_monomials(monomials: &[Monomial], nvars: usize) -> Result<i64> {
    if nvars > 64 {
        return Err(Error::usage(
            "dimension computation supports at most 64 variables",
        ));
    }
    if monomials.iter().any(|m| m.is_one()) {
        return Ok(-1);
    }
    let mut supports: Vec<u64> = monomials.iter().map(support_mask).collect();
    supports.sort_unstable();
    supports.dedup();
    // drop supports containing another support
    let minimal: Vec<u64> = supports
        .iter()
        .copied()
        .filter(|&s| !supports.iter().any(|&o| o != s && o & s == o))
        .collect();

    fn search(
        var: usize,
        nvars: usize,
        chosen: u64,
        size: usize,
        best: &mut usize,
        supports: &[u64],
    ) {
        if size + (nvars - var) <= *best {
            return;
        }
        if var == nvars {
            *best = size;
            return;
        }
        let with = chosen | (1 << var);
        if !supports.iter().any(|&s| s & !with == 0) {
            search(var + 1, nvars, with, size + 1, best, supports);
        }
        search(var + 1, nvars, chosen, size, best, supports);
    }

    let mut best = 0;
    search(0, nvars, 0, 0, &mut best, &minimal);
    Ok(best as i64)
}

pub(super) fn dimension(ideal: &Ideal) -> Result<DimReport> {
    let basis = ideal.basis()?;
    let nvars = ideal.table().len();
    let order = ideal.order();
    let lms: Vec<Monomial> = basis
        .iter()
        .map(|g| {
            g.leading_term(order)
                .expect("basis elements are nonzero")
                .0
                .clone()
        })
        .collect();
    let krull_dim = krull_dim_of_monomials(&lms, nvars)?;
    if krull_dim < 0 {
        return Ok(DimReport {
            krull_dim,
            zero_dimensional: false,
            colength: None,
        });
    }
    // zero-dimensional iff every variable has a pure power among the lms
    let mut bounds: Vec<Option<u32>> = vec![None; nvars];
    for m in &lms {
        if let Some(v) = m.pure_power_var() {
            let e = m.exp(v);
            bounds[v] = Some(bounds[v].map_or(e, |b| b.min(e)));
        }
    }
    let zero_dimensional = krull_dim == 0;
    debug_assert_eq!(zero_dimensional, bounds.iter().all(Option::is_some));
    let colength = if zero_dimensional {
        let bounds: Vec<u32> = bounds.into_iter().map(|b| b.expect("pure power")).collect();
        Some(count_standard_monomials(&lms, &bounds)?)
    } else {
        None
    };
    Ok(DimReport {
        krull_dim,
        zero_dimensional,
        colength,
    })
}

/// Counts monomials inside the box `x_i < bounds[i]` not divisible by any lm.
fn count_standard_monomials(lms: &[Monomial], bounds: &[u32]) -> Result<u64> {
    let total: u128 = bounds.iter().map(|&b| b as u128).product();
    if total > MAX_STANDARD_MONOMIALS {
        return Err(Error::resource(
            "standard monomial enumeration",
            format!("staircase box has {total} cells"),
        ));
    }
    let n = bounds.len();
    let mut exps = vec![0u32; n];
    let mut count = 0u64;
    loop {
        let standard = !lms
            .iter()
            .any(|m| m.exponents().iter().zip(&exps).all(|(a, b)| a <= b));
        if standard {
            count += 1;
        }
        // odometer increment
        let mut k = 0;
        loop {
            if k == n {
                return Ok(count);
            }
            exps[k] += 1;
            if exps[k] < bounds[k] {
                break;
            }
            exps[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::vars::VarTable;
    use crate::Poly;

    fn ideal(names: &[&str], gens: &[&str]) -> Ideal {
        let t = VarTable::holomorphic(names).unwrap();
        let gens: Vec<Poly> = gens.iter().map(|g| parse_poly(g, &t).unwrap()).collect();
        Ideal::with_generators(&t, gens).unwrap()
    }

    #[test]
    fn maximal_ideal() {
        let d = ideal(&["z", "w"], &["z", "w"]).dimension().unwrap();
        assert_eq!(
            d,
            DimReport {
                krull_dim: 0,
                zero_dimensional: true,
                colength: Some(1)
            }
        );
    }

    #[test]
    fn fat_point() {
        let d = ideal(&["z", "w"], &["z^2", "w"]).dimension().unwrap();
        assert_eq!(d.colength, Some(2));
        assert_eq!(d.krull_dim, 0);
    }

    #[test]
    fn degenerate_essential_variety_has_a_line() {
        let d = ideal(&["z1", "z2", "w"], &["w", "z1"]).dimension().unwrap();
        assert_eq!(
            d,
            DimReport {
                krull_dim: 1,
                zero_dimensional: false,
                colength: None
            }
        );
    }

    #[test]
    fn unit_and_zero_ideal() {
        let d = ideal(&["z"], &["z", "z + 1"]).dimension().unwrap();
        assert!(d.is_unit());
        assert_eq!(ideal(&["z", "w"], &[]).dimension().unwrap().krull_dim, 2);
    }

    #[test]
    fn non_monomial_zero_dimensional() {
        // four intersection points of two conics, counted with multiplicity
        let d = ideal(&["x", "y"], &["x^2 + y^2 - 5", "x*y - 2"])
            .dimension()
            .unwrap();
        assert_eq!(d.colength, Some(4));
    }
}
