//! Algebras of relations closed under composition and both residuals; they
//! are representable by construction and serve as verifier fixtures.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::FiniteResiduatedSemigroup;
use crate::bits::Relation;
use crate::error::{Error, Result};
use crate::relrep::Interpretation;

pub const DEFAULT_CLOSURE_CAP: usize = 512;

/// Closes `generators` under `;`, `\` and `/` over the full square on
/// `base_size` points and returns the resulting algebra (ordered by
/// inclusion) with its identity interpretation.
///
/// An empty generator list is read as the single empty relation. Elements are
/// sorted by cardinality, then by row-major bit pattern, and named `r0`,
/// `r1`, ...
pub fn generate_concrete(
    base_size: usize,
    generators: &[Relation],
    cap: usize,
) -> Result<(FiniteResiduatedSemigroup, Interpretation)> {
    if base_size == 0 {
        return Err(Error::Invalid("base must be nonempty".into()));
    }
    if let Some(g) = generators.iter().find(|g| g.base_size() != base_size) {
        return Err(Error::DimensionMismatch { left: base_size, right: g.base_size() });
    }
    let seeds: Vec<Relation> =
        if generators.is_empty() { vec![Relation::empty(base_size)] } else { generators.to_vec() };

    let mut family: Vec<Relation> = Vec::new();
    let mut index: HashMap<Relation, usize> = HashMap::new();
    let mut add = |r: Relation, family: &mut Vec<Relation>| -> Result<()> {
        if !index.contains_key(&r) {
            if family.len() == cap {
                return Err(Error::ClosureCap { cap });
            }
            index.insert(r.clone(), family.len());
            family.push(r);
        }
        Ok(())
    };
    for s in seeds {
        add(s, &mut family)?;
    }
    let mut i = 0;
    while i < family.len() {
        for j in 0..=i {
            for (x, y) in [(i, j), (j, i)] {
                let (r, s) = (family[x].clone(), family[y].clone());
                add(r.compose(&s), &mut family)?;
                add(r.left_residual(&s), &mut family)?;
                add(r.right_residual(&s), &mut family)?;
            }
        }
        i += 1;
    }

    family.sort_by(|a, b| a.count().cmp(&b.count()).then_with(|| row_major_bits(a).cmp(&row_major_bits(b))));
    let position: HashMap<&Relation, usize> = family.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let n = family.len();
    let mut leq = vec![false; n * n];
    let mut comp = vec![0; n * n];
    let mut lres = vec![0; n * n];
    let mut rres = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let k = a * n + b;
            let (r, s) = (&family[a], &family[b]);
            leq[k] = r.is_subset(s);
            comp[k] = position[&r.compose(s)];
            lres[k] = position[&r.left_residual(s)];
            rres[k] = position[&r.right_residual(s)];
        }
    }
    let names: Vec<String> = (0..n).map(|i| format!("r{i}")).collect();
    let interpretation = Interpretation {
        elements: names.clone(),
        base: (0..base_size).map(|i| i.to_string()).collect(),
        relations: family.clone(),
    };
    let alg = FiniteResiduatedSemigroup::from_tables(names, leq, comp, lres, rres)?;
    Ok((alg, interpretation))
}

fn row_major_bits(r: &Relation) -> Vec<bool> {
    let n = r.base_size();
    (0..n * n).map(|k| r.contains(k / n, k % n)).collect()
}

/// `count` random relations over `base_size` points, each pair present with
/// the given probability; deterministic in `seed`.
pub fn random_generators(base_size: usize, seed: u64, count: usize, density: f64) -> Vec<Relation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut r = Relation::empty(base_size);
            for x in 0..base_size {
                for y in 0..base_size {
                    if rng.gen_bool(density) {
                        r.insert(x, y);
                    }
                }
            }
            r
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate;
    use crate::verifier::check_representation;

    #[test]
    fn singleton_full_relation() {
        let (alg, interp) = generate_concrete(1, &[Relation::full(1)], 16).unwrap();
        assert_eq!(alg.len(), 1);
        assert_eq!(interp.get(0), &Relation::full(1));
    }

    #[test]
    fn empty_generators_close_to_empty_and_full() {
        let (alg, interp) = generate_concrete(1, &[], 16).unwrap();
        assert_eq!(alg.len(), 2);
        assert!(interp.get(0).is_empty());
        assert_eq!(interp.get(1), &Relation::full(1));
        assert!(validate(&alg).valid);
    }

    #[test]
    fn two_point_successor_closes() {
        let (alg, interp) = generate_concrete(2, &[Relation::from_pairs(2, [(0, 1)])], 64).unwrap();
        assert!(validate(&alg).valid);
        assert!(check_representation(&alg, &interp).unwrap().all_pass());
    }

    #[test]
    fn cap_is_enforced() {
        let g = random_generators(3, 7, 2, 0.4);
        assert_eq!(generate_concrete(3, &g, 2).unwrap_err(), Error::ClosureCap { cap: 2 });
    }
}
