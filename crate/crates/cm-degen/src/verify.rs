//! Reproducibility checks packaged as callable reports, shared by the test
//! suite and the `verify` CLI command.

use serde::Serialize;

use crate::catalog::{IndecId, SingularitySpec, StableModule};
use crate::degen::{self, Certificate};
use crate::error::Result;
use crate::homtab::CdOutcome;
use crate::k0;
use crate::oracle;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub check: String,
    pub params: String,
    pub pass: bool,
    /// Replayable payload on failure: offending module expressions.
    pub counterexample: Option<String>,
    /// Observations that do not affect pass/fail.
    pub notes: Option<String>,
}

impl Report {
    fn pass(check: &str, params: String) -> Report {
        Report { check: check.into(), params, pass: true, counterexample: None, notes: None }
    }

    fn fail(check: &str, params: String, cx: String) -> Report {
        Report { check: check.into(), params, pass: false, counterexample: Some(cx), notes: None }
    }
}

/// Checks every step of a displayed chain and validates the witnesses.
fn check_chain(spec: SingularitySpec, modules: &[StableModule]) -> Result<Option<String>> {
    for w in modules.windows(2) {
        let d = degen::leq_st(spec, &w[0], &w[1], true)?;
        if !d.leq {
            return Ok(Some(format!("{} !<= {}", w[0].render(), w[1].render())));
        }
        if !matches!(d.certificate, Some(Certificate::Witness(_))) {
            return Ok(Some(format!(
                "{} <= {} decided without witness",
                w[0].render(),
                w[1].render()
            )));
        }
    }
    Ok(None)
}

/// The displayed degeneration chains over the curve singularity: for all n
/// the chain 0, I1, ..., I_{floor(n/2)}; for odd n additionally its
/// continuation through the branch modules and the branch-based chain.
pub fn verify_theorem_odd(n: u32) -> Result<Report> {
    let spec = SingularitySpec::new(n, 1)?;
    let check = "theorem_odd_chains";
    let params = format!("n={n}, d=1");
    let half = if n % 2 == 0 { n / 2 } else { (n - 1) / 2 };

    let mut chains: Vec<Vec<StableModule>> = Vec::new();
    // 0 <= I1 <= ... <= I_half
    let mut c = vec![StableModule::zero()];
    for i in 1..=half {
        c.push(StableModule::indec(IndecId::Ideal(i)));
    }
    chains.push(c);
    if n % 2 == 1 {
        // ... <= N+ + N- and N± <= N± + I1 <= ... <= N± + I_half <= N± + N+ + N-
        let np = StableModule::indec(IndecId::BranchPlus);
        let nm = StableModule::indec(IndecId::BranchMinus);
        let last = chains[0].last().unwrap().clone();
        chains.push(vec![last, np.direct_sum(&nm)]);
        for base in [np.clone(), nm.clone()] {
            let mut c = vec![base.clone()];
            for i in 1..=half {
                c.push(base.direct_sum(&StableModule::indec(IndecId::Ideal(i))));
            }
            c.push(base.direct_sum(&np).direct_sum(&nm));
            chains.push(c);
        }
    }
    for chain in &chains {
        if let Some(cx) = check_chain(spec, chain)? {
            return Ok(Report::fail(check, params, cx));
        }
    }
    Ok(Report::pass(check, params))
}

/// Exhaustive pair scan. Over the curve, (<=hom and same K0 class) must
/// coincide with the witnessed degeneration decision. Over the artinian
/// reduction the theorem's equivalence is not available (the shift-invariance
/// hypothesis fails there), so only the necessary direction is asserted:
/// every dominance degeneration satisfies the hom+K0 criterion. Pairs where
/// the criterion holds but dominance refuses are reported as notes.
pub fn verify_equivalence(n: u32, d: u32, bound: u32) -> Result<Report> {
    let spec = SingularitySpec::new(n, d)?.knoerrer_reduce();
    let check = "order_equivalence";
    let params = format!("n={n}, d={d}, bound={bound}");
    let table = oracle::hom_table(spec)?;
    let pres = k0::k0_presentation(spec)?;
    let modules = degen::enumerate_modules(spec, bound);

    // outcome per pair: Err-like hard failure or a non-fatal gap note
    let scan_pair =
        |m: &StableModule, nn: &StableModule| -> Result<(Option<String>, Option<String>)> {
            let criterion = table.leq_hom(m, nn)? && pres.same_class(m, nn)?;
            let mut gap = None;
            if spec.d == 1 {
                let got = degen::witness(spec, m, nn)?;
                if criterion != got.is_some() {
                    return Ok((
                        Some(format!(
                            "{} vs {}: criterion {criterion}, witness {}",
                            m.render(),
                            nn.render(),
                            got.is_some()
                        )),
                        None,
                    ));
                }
            } else {
                let got = degen::leq_st(spec, m, nn, false)?.leq;
                if got && !criterion {
                    return Ok((
                        Some(format!(
                            "{} degenerates to {} without hom+K0 criterion",
                            m.render(),
                            nn.render()
                        )),
                        None,
                    ));
                }
                if criterion && !got {
                    gap = Some(format!("{} vs {}", m.render(), nn.render()));
                }
            }
            // equal hom vectors must satisfy the syzygy consequence
            if let CdOutcome::Violated { lhs, rhs } = table.cd_consequence(m, nn)? {
                return Ok((
                    Some(format!(
                        "syzygy consequence fails for {} vs {}: {} != {}",
                        m.render(),
                        nn.render(),
                        lhs.render(),
                        rhs.render()
                    )),
                    None,
                ));
            }
            Ok((None, gap))
        };

    let pairs: Vec<(usize, usize)> = (0..modules.len())
        .flat_map(|i| (0..modules.len()).map(move |j| (i, j)))
        .collect();
    let outcomes = scan(&pairs, |&(i, j)| scan_pair(&modules[i], &modules[j]))?;
    let mut gaps: Vec<String> = Vec::new();
    for (failure, gap) in outcomes {
        if let Some(cx) = failure {
            return Ok(Report::fail(check, params, cx));
        }
        gaps.extend(gap);
    }
    let mut report = Report::pass(check, params);
    if !gaps.is_empty() {
        report.notes = Some(format!(
            "{} pair(s) satisfy hom+K0 but not dominance (the theorem's \
             hypothesis fails over the artinian reduction), e.g. {}",
            gaps.len(),
            gaps[0]
        ));
    }
    Ok(report)
}

#[cfg(feature = "parallel")]
fn scan<T: Sync, U: Send>(
    items: &[T],
    f: impl Fn(&T) -> Result<U> + Sync + Send,
) -> Result<Vec<U>> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn scan<T, U>(items: &[T], f: impl Fn(&T) -> Result<U>) -> Result<Vec<U>> {
    items.iter().map(f).collect()
}

/// Antisymmetry failure of the hom order on the artinian A2: M1 and M2 have
/// equal hom vectors with cross values 1, yet are non-isomorphic and not
/// identified by the degeneration order.
pub fn verify_counterexample(n: u32, d: u32) -> Result<Report> {
    let spec = SingularitySpec::new(n, d)?.knoerrer_reduce();
    let check = "hom_order_counterexample";
    let params = format!("n={n}, d={d} (reduced {spec})");
    if spec != SingularitySpec::new(2, 0)? {
        return Ok(Report::fail(check, params, format!("{spec} is not the artinian A2")));
    }
    let table = oracle::hom_table(spec)?;
    let m1 = StableModule::indec(IndecId::Jordan(1));
    let m2 = StableModule::indec(IndecId::Jordan(2));
    let ok = table.dim(IndecId::Jordan(1), IndecId::Jordan(2)) == 1
        && table.dim(IndecId::Jordan(2), IndecId::Jordan(1)) == 1
        && table.hom_vector(&m1)? == table.hom_vector(&m2)?
        && m1 != m2
        && table.leq_hom(&m1, &m2)?
        && table.leq_hom(&m2, &m1)?
        && !degen::leq_st(spec, &m1, &m2, false)?.leq
        && !degen::leq_st(spec, &m2, &m1, false)?.leq;
    if ok {
        Ok(Report::pass(check, params))
    } else {
        Ok(Report::fail(
            check,
            params,
            format!("hom table rows: {:?}", table.dims()),
        ))
    }
}

/// The mesh identity over the oracle table, every (U, X) pair.
pub fn verify_mesh(n: u32, d: u32) -> Result<Report> {
    let spec = SingularitySpec::new(n, d)?.knoerrer_reduce();
    let check = "mesh_relation";
    let params = format!("n={n}, d={d}");
    let table = oracle::hom_table(spec)?;
    match crate::ar_quiver::check_mesh_relation(spec, &|x, y| table.dim(x, y)) {
        Ok(()) => Ok(Report::pass(check, params)),
        Err(cx) => Ok(Report::fail(check, params, cx)),
    }
}

/// Runs every check for one ring at the given scan bound.
pub fn verify_all(spec: SingularitySpec, bound: u32) -> Result<Vec<Report>> {
    let r = spec.knoerrer_reduce();
    let mut reports = vec![verify_mesh(r.n, r.d)?];
    if r.d == 1 {
        reports.push(verify_theorem_odd(r.n)?);
    }
    reports.push(verify_equivalence(r.n, r.d, bound)?);
    if r == SingularitySpec::new(2, 0)? {
        reports.push(verify_counterexample(r.n, r.d)?);
    }
    reports.sort_by(|a, b| a.check.cmp(&b.check));
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_odd_small() {
        for n in [1u32, 2, 3, 5] {
            let r = verify_theorem_odd(n).unwrap();
            assert!(r.pass, "{:?}", r.counterexample);
        }
    }

    #[test]
    fn equivalence_small() {
        assert!(verify_equivalence(1, 1, 2).unwrap().pass);
        assert!(verify_equivalence(3, 1, 2).unwrap().pass);
        // passes, but reports pairs (e.g. 3*M1 vs 3*M2) where the hom+K0
        // criterion holds yet no degeneration exists
        let r = verify_equivalence(2, 0, 3).unwrap();
        assert!(r.pass);
        assert!(r.notes.is_some());
        assert!(verify_equivalence(2, 0, 2).unwrap().notes.is_none());
    }

    #[test]
    fn counterexample_variants() {
        assert!(verify_counterexample(2, 0).unwrap().pass);
        assert!(verify_counterexample(2, 2).unwrap().pass);
        assert!(verify_counterexample(2, 4).unwrap().pass);
        assert!(!verify_counterexample(3, 0).unwrap().pass);
    }

    #[test]
    fn mesh_small() {
        for n in 1..=5 {
            for d in 0..=1 {
                assert!(verify_mesh(n, d).unwrap().pass);
            }
        }
    }
}
