//! The Grothendieck group of the stable category, presented by the AR
//! triangles, with canonical class representatives and equality testing.

use serde::Serialize;

use crate::ar_quiver;
use crate::catalog::{IndecId, SingularitySpec, StableModule};
use crate::error::{Error, Result};
use crate::snf;

/// Finite presentation of K0: free abelian group on the indecomposables
/// modulo one relation `[Z] - [Y] + [X]` per AR triangle Z -> Y -> X.
#[derive(Debug, Clone, Serialize)]
pub struct K0Presentation {
    pub spec: SingularitySpec,
    pub generators: Vec<IndecId>,
    pub relations: Vec<Vec<i64>>,
    /// Nontrivial invariant factors, `0` marking a free summand.
    pub invariant_factors: Vec<i64>,
    #[serde(skip)]
    hnf: Vec<Vec<i64>>,
}

pub fn k0_presentation(spec: SingularitySpec) -> Result<K0Presentation> {
    let r = spec.knoerrer_reduce();
    let generators = r.classify();
    if generators.is_empty() {
        return Err(Error::Internal(format!("no indecomposables for {r}")));
    }
    let index = |id: IndecId| generators.iter().position(|&g| g == id).unwrap();
    let mut relations = Vec::new();
    for tri in ar_quiver::ar_triangles(r) {
        let mut row = vec![0i64; generators.len()];
        row[index(tri.translate)] += 1;
        row[index(tri.end)] += 1;
        for (&w, &mult) in tri.middle.iter() {
            row[index(w)] -= mult as i64;
        }
        relations.push(row);
    }
    let factors = snf::smith_invariant_factors(&relations);
    let rank = generators.len() - factors.len();
    let mut invariant_factors: Vec<i64> =
        factors.into_iter().filter(|&d| d != 1).collect();
    invariant_factors.extend(std::iter::repeat(0).take(rank));
    let hnf = snf::hermite_normal_form(&relations);
    Ok(K0Presentation { spec: r, generators, relations, invariant_factors, hnf })
}

impl K0Presentation {
    /// Human-readable group, e.g. `Z`, `Z/3`, `Z + Z/2`, `0`.
    pub fn group_name(&self) -> String {
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|&d| if d == 0 { "Z".to_string() } else { format!("Z/{d}") })
            .collect();
        parts.sort();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    fn raw_class(&self, m: &StableModule) -> Result<Vec<i64>> {
        let mut v = vec![0i64; self.generators.len()];
        for (&id, &mult) in m.iter() {
            let Some(i) = self.generators.iter().position(|&g| g == id) else {
                return Err(Error::UnknownId { spec: self.spec, id });
            };
            v[i] += mult as i64;
        }
        Ok(v)
    }

    /// Canonical representative of `[M]` in the quotient, as coordinates on
    /// the generators reduced modulo the relation lattice.
    pub fn class(&self, m: &StableModule) -> Result<Vec<i64>> {
        Ok(snf::reduce_mod_lattice(&self.hnf, &self.raw_class(m)?))
    }

    pub fn same_class(&self, m: &StableModule, n: &StableModule) -> Result<bool> {
        let vm = self.raw_class(m)?;
        let vn = self.raw_class(n)?;
        let diff: Vec<i64> = vm.iter().zip(&vn).map(|(a, b)| a - b).collect();
        Ok(snf::in_lattice(&self.hnf, &diff))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(n: u32, d: u32) -> K0Presentation {
        k0_presentation(SingularitySpec::new(n, d).unwrap()).unwrap()
    }

    #[test]
    fn known_groups() {
        assert_eq!(pres(1, 1).group_name(), "Z");
        assert_eq!(pres(2, 1).group_name(), "0");
        assert_eq!(pres(3, 1).group_name(), "Z");
        assert_eq!(pres(2, 0).group_name(), "Z/3");
    }

    #[test]
    fn artinian_group_is_cyclic_of_order_n_plus_one() {
        for n in 1..=8 {
            assert_eq!(pres(n, 0).group_name(), format!("Z/{}", n + 1));
        }
    }

    #[test]
    fn knoerrer_invariance() {
        for n in 1..=6 {
            for d in 0..=1u32 {
                let lo = pres(n, d);
                let hi = pres(n, d + 4);
                assert_eq!(lo.invariant_factors, hi.invariant_factors);
                assert_eq!(lo.relations, hi.relations);
            }
        }
    }

    #[test]
    fn classes_in_a1() {
        // n=1, d=1: K0 = Z with [N+] = -[N-] a generator
        let p = pres(1, 1);
        let np = StableModule::indec(IndecId::BranchPlus);
        let nm = StableModule::indec(IndecId::BranchMinus);
        assert!(!p.same_class(&np, &nm).unwrap());
        assert!(p.same_class(&np.direct_sum(&nm), &StableModule::zero()).unwrap());
        assert_eq!(p.class(&np).unwrap(), p.class(&np).unwrap());
    }

    #[test]
    fn classes_in_artinian_a2() {
        // K0 = Z/3 generated by [M1]; [M2] = -[M1]
        let p = pres(2, 0);
        let m1 = StableModule::indec(IndecId::Jordan(1));
        let m2 = StableModule::indec(IndecId::Jordan(2));
        assert!(!p.same_class(&m1, &m2).unwrap());
        assert!(p.same_class(&m1.direct_sum(&m2), &StableModule::zero()).unwrap());
        let mut three = StableModule::zero();
        three.add(IndecId::Jordan(1), 3);
        assert!(p.same_class(&three, &StableModule::zero()).unwrap());
    }

    #[test]
    fn syzygy_preserves_class_up_to_sign() {
        // [Omega M] = -[M] in the triangulated K0
        for (n, d) in [(4u32, 1u32), (5, 1), (4, 0)] {
            let spec = SingularitySpec::new(n, d).unwrap();
            let p = pres(n, d);
            for id in spec.classify() {
                let m = StableModule::indec(id);
                let om = spec.syzygy_module(&m).unwrap();
                assert!(p
                    .same_class(&m.direct_sum(&om), &StableModule::zero())
                    .unwrap());
            }
        }
    }
}
