//! Degeneration theory: irredundant AR expressions, ladder composition, the
//! key-lemma transform, witness construction, the stable degeneration order
//! for both dimension parities, chains and Hasse diagrams.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::ar_quiver;
use crate::catalog::{IndecId, SingularitySpec, StableModule};
use crate::error::{Error, Result};
use crate::homtab::{DeltaFunction, HomTable};
use crate::k0::{self, K0Presentation};
use crate::oracle;

/// Coefficients `c(X)` of an irredundant expression
/// `[N] - [M] = sum c(X) * ([X] + [tau X] - [middle(X)])`
/// in the free abelian group on the indecomposables; at most one id per
/// shift orbit carries a coefficient.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ARExpression {
    pub coefficients: BTreeMap<IndecId, u32>,
}

/// Object-level triangle Z -> Y -> X -> Z[1] with a construction trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleObj {
    pub z: StableModule,
    pub y: StableModule,
    pub x: StableModule,
    pub provenance: Vec<String>,
}

impl TriangleObj {
    pub fn new(z: StableModule, y: StableModule, x: StableModule) -> Self {
        TriangleObj { z, y, x, provenance: Vec::new() }
    }
}

/// Certified stable degeneration M ~> N: a triangle Z -> M + Z -> N together
/// with the bookkeeping that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub z: StableModule,
    pub triangle: TriangleObj,
    pub trace: Vec<String>,
}

fn require_reduced_curve(spec: SingularitySpec) -> Result<SingularitySpec> {
    let r = spec.knoerrer_reduce();
    if r.d != 1 {
        return Err(Error::InvalidSpec(format!(
            "{spec} reduces to d=0; this construction needs the d=1 branch"
        )));
    }
    Ok(r)
}

/// `delta_{Sigma_X}(X)`: 2 when the shift fixes `X`, otherwise 1.
fn delta_sigma_at_end(spec: SingularitySpec, x: IndecId) -> Result<i64> {
    Ok(if spec.shift(x, -1)? == x { 2 } else { 1 })
}

/// Irredundant AR expression for `[N] - [M]`, or `None` when the hom-order /
/// K0 preconditions fail.
pub fn irredundant_expression(
    spec: SingularitySpec,
    m: &StableModule,
    n: &StableModule,
) -> Result<Option<ARExpression>> {
    let r = require_reduced_curve(spec)?;
    let table = oracle::hom_table(r)?;
    let pres = k0::k0_presentation(r)?;
    if !table.leq_hom(m, n)? || !pres.same_class(m, n)? {
        return Ok(None);
    }
    let delta = table.delta(m, n)?;
    let labels = r.classify();

    let mut coefficients = BTreeMap::new();
    let mut handled = std::collections::BTreeSet::new();
    for &x in &labels {
        if handled.contains(&x) {
            continue;
        }
        let ox = r.shift(x, -1)?;
        handled.insert(x);
        handled.insert(ox);
        let dv = delta.get(x);
        let ds = delta_sigma_at_end(r, x)?;
        if dv % ds != 0 || dv < 0 {
            return Err(Error::Internal(format!(
                "delta({x}) = {dv} is not a non-negative multiple of {ds}"
            )));
        }
        let c = (dv / ds) as u32;
        if c > 0 {
            coefficients.insert(x, c);
        }
    }

    // the free-group identity [N] - [M] = sum c(X) * relation(X)
    let lhs: Vec<i64> = {
        let vm = class_vector(&labels, m);
        let vn = class_vector(&labels, n);
        vm.iter().zip(&vn).map(|(a, b)| b - a).collect()
    };
    let mut rhs = vec![0i64; labels.len()];
    for (&x, &c) in &coefficients {
        let tri = ar_quiver::ar_triangle(r, x)?;
        for (j, v) in ar_quiver::relation_vector(r, &tri).iter().enumerate() {
            rhs[j] += c as i64 * v;
        }
    }
    if lhs != rhs {
        return Err(Error::Internal(format!(
            "free-group identity fails: {lhs:?} != {rhs:?}"
        )));
    }
    Ok(Some(ARExpression { coefficients }))
}

fn class_vector(labels: &[IndecId], m: &StableModule) -> Vec<i64> {
    let mut v = vec![0i64; labels.len()];
    for (&id, &mult) in m.iter() {
        let i = labels.iter().position(|&l| l == id).expect("classified id");
        v[i] += mult as i64;
    }
    v
}

fn sub_multiset(big: &StableModule, small: &StableModule) -> Result<StableModule> {
    let mut out = big.clone();
    for (&id, &mult) in small.iter() {
        if out.mult(id) < mult {
            return Err(Error::Internal(format!(
                "{} does not contain the declared summand {}",
                big.render(),
                small.render()
            )));
        }
        out.remove(id, mult);
    }
    Ok(out)
}

/// Ladder composition: from `s1 = (N1, L1 + N2, L2)` and
/// `s2 = (M1, N1 + M2, N2)` build `(M1, L1 + M2, L2)`. The shared terms are
/// read off as `N1 = s1.z` and `N2 = s2.x`.
pub fn ladder_compose(s1: &TriangleObj, s2: &TriangleObj) -> Result<TriangleObj> {
    let l1 = sub_multiset(&s1.y, &s2.x)?;
    let m2 = sub_multiset(&s2.y, &s1.z)?;
    let mut out = TriangleObj::new(s2.z.clone(), l1.direct_sum(&m2), s1.x.clone());
    out.provenance.extend(s1.provenance.iter().cloned());
    out.provenance.extend(s2.provenance.iter().cloned());
    out.provenance.push(format!(
        "ladder: glued ({}, {}, {}) onto ({}, {}, {})",
        s2.z.render(),
        s2.y.render(),
        s2.x.render(),
        s1.z.render(),
        s1.y.render(),
        s1.x.render()
    ));
    Ok(out)
}

/// The pullback step of the key lemma: splice the AR triangle ending at `w`
/// into `s` at a middle summand `w`.
fn splice_ar_triangle(spec: SingularitySpec, s: &TriangleObj, w: IndecId) -> Result<TriangleObj> {
    let tri = ar_quiver::ar_triangle(spec, w)?;
    // s2 = id_Z + (tau w -> E_w -> w)
    let s2 = TriangleObj::new(
        s.z.direct_sum(&StableModule::indec(tri.translate)),
        s.z.direct_sum(&tri.middle),
        StableModule::indec(tri.end),
    );
    ladder_compose(s, &s2)
}

/// Iterates the key-lemma pullback until `delta` of the triangle matches
/// `target` on every summand of the middle term.
pub fn key_lemma_transform(
    spec: SingularitySpec,
    sigma: TriangleObj,
    target: &DeltaFunction,
) -> Result<TriangleObj> {
    let r = require_reduced_curve(spec)?;
    let table = oracle::hom_table(r)?;
    let total: i64 = target.iter().map(|(_, &v)| v.max(0)).sum();
    let cap = (total * r.classify().len() as i64).max(1);
    let mut s = sigma;
    for _ in 0..=cap {
        let d = table.delta_triangle(&s.z, &s.y, &s.x)?;
        let Some(w) = s.y.support().find(|&w| d.get(w) < target.get(w)) else {
            return Ok(s);
        };
        let mut next = splice_ar_triangle(r, &s, w)?;
        next.provenance.push(format!(
            "key lemma: delta({w}) = {} < {} target; spliced AR triangle at {w}",
            d.get(w),
            target.get(w)
        ));
        s = next;
    }
    Err(Error::Internal(format!(
        "key-lemma transform exceeded {cap} iterations"
    )))
}

/// Witness construction for M ~> N over a reduced curve singularity.
/// `None` when the hom-order / K0 preconditions fail.
pub fn witness(
    spec: SingularitySpec,
    m: &StableModule,
    n: &StableModule,
) -> Result<Option<Witness>> {
    let r = require_reduced_curve(spec)?;
    let table = oracle::hom_table(r)?;
    let pres = k0::k0_presentation(r)?;
    if !table.leq_hom(m, n)? || !pres.same_class(m, n)? {
        return Ok(None);
    }

    let mut trace = Vec::new();
    let (m0, n0) = StableModule::cancel_common(m, n);
    trace.push(format!(
        "cancelled common summands: M' = {}, N' = {}",
        m0.render(),
        n0.render()
    ));
    let delta = table.delta(&m0, &n0)?;

    // r(X) = min(delta'(X), mu(N', X)) with delta' = delta / delta_Sigma
    let labels = r.classify();
    let mut rx: BTreeMap<IndecId, u32> = BTreeMap::new();
    for &x in &labels {
        let dv = delta.get(x);
        let ds = delta_sigma_at_end(r, x)?;
        if dv % ds != 0 || dv < 0 {
            return Err(Error::Internal(format!(
                "delta({x}) = {dv} is not a non-negative multiple of {ds}"
            )));
        }
        let dprime = (dv / ds) as u32;
        let rv = dprime.min(n0.mult(x));
        if rv > 0 {
            rx.insert(x, rv);
        }
    }
    trace.push(format!(
        "r = {{{}}}",
        rx.iter().map(|(x, v)| format!("{x}: {v}")).collect::<Vec<_>>().join(", ")
    ));

    // G: one representative per shift orbit inside F = {r > 0}, preferring
    // the larger r; on ties the later id, so the translate is the earlier
    let mut g: Vec<IndecId> = Vec::new();
    let mut handled = std::collections::BTreeSet::new();
    for &x in &labels {
        if handled.contains(&x) {
            continue;
        }
        let ox = r.shift(x, -1)?;
        handled.insert(x);
        handled.insert(ox);
        let (rx_x, rx_ox) = (rx.get(&x).copied().unwrap_or(0), rx.get(&ox).copied().unwrap_or(0));
        if x == ox {
            if rx_x > 0 {
                g.push(x);
            }
        } else if rx_x > rx_ox {
            g.push(x);
        } else if rx_ox > 0 {
            g.push(ox);
        }
    }
    trace.push(format!(
        "G = {{{}}}",
        g.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
    ));

    // split N' = N1 + N2 + N3 and form the r(X)-fold sum of AR triangles
    let mut n1 = StableModule::zero();
    let mut n2 = StableModule::zero();
    let mut n3 = n0.clone();
    let mut sigma = TriangleObj::new(StableModule::zero(), StableModule::zero(), StableModule::zero());
    for &x in &g {
        let rv = rx[&x];
        n1.add(x, rv);
        n2.add(x, n0.mult(x) - rv);
        n3.remove(x, n0.mult(x));
        let tri = ar_quiver::ar_triangle(r, x)?;
        sigma.z.add(tri.translate, rv);
        for (&w, &c) in tri.middle.iter() {
            sigma.y.add(w, c * rv);
        }
        sigma.x.add(x, rv);
    }
    trace.push(format!(
        "N1 = {}, N2 = {}, N3 = {}",
        n1.render(),
        n2.render(),
        n3.render()
    ));
    sigma.provenance.push(format!(
        "initial sum of AR triangles: ({}, {}, {})",
        sigma.z.render(),
        sigma.y.render(),
        sigma.x.render()
    ));

    let phi = key_lemma_transform(r, sigma, &delta)?;

    // Claim 2: delta of the final triangle equals delta_{M,N} everywhere
    let dphi = table.delta_triangle(&phi.z, &phi.y, &phi.x)?;
    if dphi != delta {
        return Err(Error::Internal(format!(
            "final triangle delta {dphi:?} differs from delta_{{M,N}} {delta:?}; trace: {trace:?} / {:?}",
            phi.provenance
        )));
    }
    // ... and the multiset identity M' + Z = N2 + N3 + Y
    let lhs = m0.direct_sum(&phi.z);
    let rhs = n2.direct_sum(&n3).direct_sum(&phi.y);
    if lhs != rhs {
        return Err(Error::Internal(format!(
            "multiset identity fails: M'+Z = {} vs N2+N3+Y = {}; trace: {trace:?}",
            lhs.render(),
            rhs.render()
        )));
    }
    trace.extend(phi.provenance.iter().cloned());
    trace.push(format!(
        "verified M'+Z = N2+N3+Y = {} and delta_Phi = delta_{{M,N}}",
        lhs.render()
    ));

    // reinstate the cancelled summands: Z -> M + Z -> N
    let z = phi.z.clone();
    let mut triangle = TriangleObj::new(z.clone(), m.direct_sum(&z), n.clone());
    triangle.provenance = phi.provenance;
    Ok(Some(Witness { z, triangle, trace }))
}

/// Certificate attached to a positive `leq_st` decision.
#[derive(Debug, Clone, Serialize)]
pub enum Certificate {
    Witness(Box<Witness>),
    Dominance {
        pad_m: u32,
        pad_n: u32,
        partition_m: Vec<u32>,
        partition_n: Vec<u32>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct StDecision {
    pub leq: bool,
    pub leq_hom: bool,
    pub same_class: bool,
    pub certificate: Option<Certificate>,
}

/// k-dimension of the underlying module over the artinian reduction.
fn artinian_dim(m: &StableModule) -> u64 {
    m.iter()
        .map(|(&id, &c)| match id {
            IndecId::Jordan(i) => i as u64 * c as u64,
            _ => unreachable!("artinian modules only"),
        })
        .sum()
}

/// Jordan partition, largest parts first, with `pad` free parts of size n+1.
fn jordan_partition(spec: SingularitySpec, m: &StableModule, pad: u32) -> Vec<u32> {
    let mut parts = Vec::new();
    for _ in 0..pad {
        parts.push(spec.n + 1);
    }
    for (&id, &c) in m.iter() {
        if let IndecId::Jordan(i) = id {
            parts.extend(std::iter::repeat(i).take(c as usize));
        }
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// Dominance order on partitions of equal totals.
fn dominates(a: &[u32], b: &[u32]) -> bool {
    let len = a.len().max(b.len());
    let (mut sa, mut sb) = (0u64, 0u64);
    for i in 0..len {
        sa += a.get(i).copied().unwrap_or(0) as u64;
        sb += b.get(i).copied().unwrap_or(0) as u64;
        if sa < sb {
            return false;
        }
    }
    sa == sb
}

/// Degeneration oracle for the artinian reduction: pad with free summands to
/// equal dimension, then compare Jordan partitions in the dominance order.
fn artinian_leq_st(
    spec: SingularitySpec,
    m: &StableModule,
    n: &StableModule,
) -> Result<(bool, Option<Certificate>)> {
    let free = (spec.n + 1) as u64;
    let (dm, dn) = (artinian_dim(m), artinian_dim(n));
    let bound = ((dm + dn + free) / free) as u32 + 1;
    let mut decision: Option<(bool, Certificate)> = None;
    for pad_m in 0..=bound {
        for pad_n in 0..=bound {
            if dm + pad_m as u64 * free != dn + pad_n as u64 * free {
                continue;
            }
            let pa = jordan_partition(spec, m, pad_m);
            let pb = jordan_partition(spec, n, pad_n);
            let leq = dominates(&pa, &pb);
            match &decision {
                None => {
                    decision = Some((
                        leq,
                        Certificate::Dominance {
                            pad_m,
                            pad_n,
                            partition_m: pa,
                            partition_n: pb,
                        },
                    ));
                }
                Some((prev, _)) if *prev != leq => {
                    return Err(Error::Internal(format!(
                        "padding changed the dominance verdict for {} vs {}",
                        m.render(),
                        n.render()
                    )));
                }
                Some(_) => {}
            }
        }
    }
    // no padding equalizes dimensions: classes differ in Z/(n+1)
    Ok(match decision {
        Some((leq, cert)) => (leq, leq.then_some(cert)),
        None => (false, None),
    })
}

/// The stable degeneration order, decided per dimension parity and
/// optionally certified by a witness.
pub fn leq_st(
    spec: SingularitySpec,
    m: &StableModule,
    n: &StableModule,
    want_witness: bool,
) -> Result<StDecision> {
    let r = spec.knoerrer_reduce();
    let table = oracle::hom_table(r)?;
    let pres = k0::k0_presentation(r)?;
    let leq_hom = table.leq_hom(m, n)?;
    let same_class = pres.same_class(m, n)?;
    if r.d == 1 {
        let leq = leq_hom && same_class;
        let certificate = if leq && want_witness {
            match witness(r, m, n)? {
                Some(w) => Some(Certificate::Witness(Box::new(w))),
                None => {
                    return Err(Error::Internal(
                        "decision positive but witness construction refused".into(),
                    ))
                }
            }
        } else {
            None
        };
        Ok(StDecision { leq, leq_hom, same_class, certificate })
    } else {
        let (leq, certificate) = artinian_leq_st(r, m, n)?;
        Ok(StDecision { leq, leq_hom, same_class, certificate })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainStep {
    pub from: StableModule,
    pub to: StableModule,
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Chain {
    pub modules: Vec<StableModule>,
    pub steps: Vec<ChainStep>,
}

/// All stable modules whose multiplicity at each id stays within `bound`.
fn enumerate_by_bounds(labels: &[IndecId], bound: &dyn Fn(IndecId) -> u32) -> Vec<StableModule> {
    let mut out = vec![StableModule::zero()];
    for &id in labels {
        let b = bound(id);
        let mut next = Vec::new();
        for m in &out {
            for c in 0..=b {
                let mut m2 = m.clone();
                m2.add(id, c);
                next.push(m2);
            }
        }
        out = next;
    }
    out
}

/// All stable modules of total multiplicity at most `bound`.
pub fn enumerate_modules(spec: SingularitySpec, bound: u32) -> Vec<StableModule> {
    let labels = spec.knoerrer_reduce().classify();
    let mut out: Vec<StableModule> = enumerate_by_bounds(&labels, &|_| bound)
        .into_iter()
        .filter(|m| m.total_multiplicity() <= bound)
        .collect();
    out.sort_by_key(|m| {
        (
            m.total_multiplicity(),
            labels.iter().map(|&l| std::cmp::Reverse(m.mult(l))).collect::<Vec<_>>(),
        )
    });
    out
}

/// A chain of single-step degenerations from M to N, each step a covering
/// relation in the interval [M, N], or `None` when M is not below N.
pub fn chain(spec: SingularitySpec, m: &StableModule, n: &StableModule) -> Result<Option<Chain>> {
    let r = spec.knoerrer_reduce();
    if !leq_st(r, m, n, false)?.leq {
        return Ok(None);
    }
    if m == n {
        return Ok(Some(Chain { modules: vec![m.clone()], steps: Vec::new() }));
    }
    let table = oracle::hom_table(r)?;
    let hv_n = table.hom_vector(n)?;
    let labels = r.classify();
    // mu(L, Y) <= [Y, L] <= [Y, N], so this bound captures the interval
    let candidates: Vec<StableModule> =
        enumerate_by_bounds(&labels, &|id| {
            hv_n[labels.iter().position(|&l| l == id).unwrap()].min(u32::MAX as u64) as u32
        })
        .into_iter()
        .filter(|l| {
            leq_st(r, m, l, false).map(|d| d.leq).unwrap_or(false)
                && leq_st(r, l, n, false).map(|d| d.leq).unwrap_or(false)
        })
        .collect();

    // covering relations by transitive reduction, then a shortest path
    let k = candidates.len();
    let mut rel = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            if i != j && leq_st(r, &candidates[i], &candidates[j], false)?.leq {
                rel[i][j] = true;
            }
        }
    }
    let cover = |i: usize, j: usize| {
        rel[i][j] && !(0..k).any(|w| rel[i][w] && rel[w][j])
    };
    let src = candidates.iter().position(|c| c == m).unwrap();
    let dst = candidates.iter().position(|c| c == n).unwrap();
    let mut prev = vec![usize::MAX; k];
    let mut queue = std::collections::VecDeque::from([src]);
    let mut seen = vec![false; k];
    seen[src] = true;
    while let Some(u) = queue.pop_front() {
        if u == dst {
            break;
        }
        for v in 0..k {
            if !seen[v] && cover(u, v) {
                seen[v] = true;
                prev[v] = u;
                queue.push_back(v);
            }
        }
    }
    if !seen[dst] {
        return Err(Error::Internal(format!(
            "no cover path from {} to {} despite leq_st",
            m.render(),
            n.render()
        )));
    }
    let mut path = vec![dst];
    while *path.last().unwrap() != src {
        path.push(prev[*path.last().unwrap()]);
    }
    path.reverse();
    let modules: Vec<StableModule> = path.iter().map(|&i| candidates[i].clone()).collect();
    let mut steps = Vec::new();
    for w in modules.windows(2) {
        let d = leq_st(r, &w[0], &w[1], r.d == 1)?;
        steps.push(ChainStep { from: w[0].clone(), to: w[1].clone(), certificate: d.certificate });
    }
    Ok(Some(Chain { modules, steps }))
}

#[derive(Debug, Clone, Serialize)]
pub struct HasseDiagram {
    pub nodes: Vec<StableModule>,
    /// Edges `(i, j)` meaning node i degenerates to node j in one cover.
    pub edges: Vec<(usize, usize)>,
}

impl HasseDiagram {
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph hasse {\n  rankdir=LR;\n");
        for (i, n) in self.nodes.iter().enumerate() {
            s.push_str(&format!("  n{i} [label=\"{}\"];\n", n.render()));
        }
        for &(i, j) in &self.edges {
            s.push_str(&format!("  n{i} -> n{j};\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// Hasse diagram of the stable degeneration order on all modules of total
/// multiplicity at most `bound`, optionally restricted to one K0 class.
pub fn hasse(
    spec: SingularitySpec,
    bound: u32,
    class_filter: Option<&StableModule>,
    node_cap: usize,
) -> Result<HasseDiagram> {
    let r = spec.knoerrer_reduce();
    let pres: K0Presentation = k0::k0_presentation(r)?;
    let mut nodes = enumerate_modules(r, bound);
    if let Some(rep) = class_filter {
        let target = pres.class(rep)?;
        nodes.retain(|m| pres.class(m).map(|c| c == target).unwrap_or(false));
    }
    if nodes.len() > node_cap {
        return Err(Error::Internal(format!(
            "Hasse diagram would have {} nodes, above the cap {node_cap}",
            nodes.len()
        )));
    }
    let k = nodes.len();
    let decide = |i: usize, j: usize| -> Result<bool> {
        Ok(i != j && leq_st(r, &nodes[i], &nodes[j], false)?.leq)
    };
    let rel: Vec<Vec<bool>>;
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        rel = (0..k)
            .into_par_iter()
            .map(|i| (0..k).map(|j| decide(i, j).unwrap_or(false)).collect())
            .collect();
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut rows = vec![vec![false; k]; k];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = decide(i, j)?;
            }
        }
        rel = rows;
    }
    let mut edges = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if rel[i][j] && !(0..k).any(|w| rel[i][w] && rel[w][j]) {
                edges.push((i, j));
            }
        }
    }
    Ok(HasseDiagram { nodes, edges })
}

/// Shared table handle for scans.
pub fn table_for(spec: SingularitySpec) -> Result<Arc<HomTable>> {
    oracle::hom_table(spec.knoerrer_reduce())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::parse_module_expr;

    fn spec(n: u32, d: u32) -> SingularitySpec {
        SingularitySpec::new(n, d).unwrap()
    }

    fn md(s: SingularitySpec, text: &str) -> StableModule {
        parse_module_expr(s, text).unwrap()
    }

    #[test]
    fn irredundant_expression_examples() {
        let s = spec(1, 1);
        let e = irredundant_expression(s, &StableModule::zero(), &md(s, "N+ + N-"))
            .unwrap()
            .unwrap();
        assert_eq!(e.coefficients, BTreeMap::from([(IndecId::BranchPlus, 1)]));

        let m = md(s, "N+");
        assert_eq!(
            irredundant_expression(s, &m, &m).unwrap().unwrap(),
            ARExpression::default()
        );
        // incomparable pair
        assert!(irredundant_expression(s, &md(s, "N+"), &md(s, "N-")).unwrap().is_none());

        let s = spec(5, 1);
        let e = irredundant_expression(s, &md(s, "I1"), &md(s, "I2")).unwrap().unwrap();
        assert_eq!(
            e.coefficients,
            BTreeMap::from([(IndecId::Ideal(2), 1), (IndecId::BranchPlus, 1)])
        );
    }

    #[test]
    fn ladder_identity_gluing() {
        let s = spec(3, 1);
        let s1 = TriangleObj::new(md(s, "N-"), md(s, "I1"), md(s, "N+"));
        let s2 = TriangleObj::new(s1.z.clone(), s1.z.clone(), StableModule::zero());
        let out = ladder_compose(&s1, &s2).unwrap();
        assert_eq!((out.z, out.y, out.x), (s1.z, s1.y, s1.x));
    }

    #[test]
    fn ladder_delta_additivity() {
        let s = spec(5, 1);
        let table = oracle::hom_table(s).unwrap();
        let s1 = TriangleObj::new(md(s, "I2"), md(s, "I1 + N+ + N-"), md(s, "I2"));
        // id_Z + AR triangle at N+
        let s2 = TriangleObj::new(md(s, "I2 + N-"), md(s, "I2 + I2"), md(s, "N+"));
        let out = ladder_compose(&s1, &s2).unwrap();
        let d1 = table.delta_triangle(&s1.z, &s1.y, &s1.x).unwrap();
        let d2 = table.delta_triangle(&s2.z, &s2.y, &s2.x).unwrap();
        let dout = table.delta_triangle(&out.z, &out.y, &out.x).unwrap();
        assert_eq!(dout, d1.add(&d2));
    }

    #[test]
    fn key_lemma_examples() {
        let s = spec(5, 1);
        let table = oracle::hom_table(s).unwrap();
        let target = table.delta(&md(s, "I1"), &md(s, "I2")).unwrap();
        let sigma = TriangleObj::new(md(s, "I2"), md(s, "I1 + N+ + N-"), md(s, "I2"));
        let phi = key_lemma_transform(s, sigma, &target).unwrap();
        assert_eq!(phi.z, md(s, "I2 + N-"));
        assert_eq!(phi.y, md(s, "I1 + I2 + N-"));
        assert_eq!(table.delta_triangle(&phi.z, &phi.y, &phi.x).unwrap(), target);

        // already matching: unchanged
        let sigma = TriangleObj::new(md(s, "N-"), md(s, "I2"), md(s, "N+"));
        let d = table.delta_triangle(&sigma.z, &sigma.y, &sigma.x).unwrap();
        let phi = key_lemma_transform(s, sigma.clone(), &d).unwrap();
        assert_eq!((phi.z, phi.y, phi.x), (sigma.z, sigma.y, sigma.x));
    }

    #[test]
    fn witness_examples() {
        let s = spec(1, 1);
        let w = witness(s, &StableModule::zero(), &md(s, "N+ + N-")).unwrap().unwrap();
        assert_eq!(w.z, md(s, "N+"));
        assert_eq!(w.triangle.y, md(s, "N+"));
        assert_eq!(w.triangle.x, md(s, "N+ + N-"));

        let m = md(s, "N+");
        let w = witness(s, &m, &m).unwrap().unwrap();
        assert!(w.z.is_zero());

        let s = spec(5, 1);
        let w = witness(s, &md(s, "I1"), &md(s, "I2")).unwrap().unwrap();
        assert_eq!(w.z, md(s, "I2 + N-"));
        assert!(witness(s, &md(s, "N+"), &md(s, "N-")).unwrap().is_none());
    }

    #[test]
    fn leq_st_examples() {
        let s = spec(5, 1);
        assert!(leq_st(s, &StableModule::zero(), &md(s, "I1"), true).unwrap().leq);
        assert!(leq_st(s, &md(s, "I1"), &md(s, "I2"), true).unwrap().leq);
        assert!(!leq_st(s, &md(s, "N+"), &md(s, "N-"), false).unwrap().leq);

        let s = spec(2, 0);
        let d = leq_st(s, &md(s, "M2"), &md(s, "2*M1"), false).unwrap();
        assert!(d.leq);
        assert!(!leq_st(s, &md(s, "2*M1"), &md(s, "M2"), false).unwrap().leq);
        assert!(!leq_st(s, &md(s, "M1"), &md(s, "M2"), false).unwrap().leq);
    }

    #[test]
    fn chain_examples() {
        let s = spec(5, 1);
        let c = chain(s, &StableModule::zero(), &md(s, "I2")).unwrap().unwrap();
        assert_eq!(
            c.modules,
            vec![StableModule::zero(), md(s, "I1"), md(s, "I2")]
        );
        for step in &c.steps {
            assert!(matches!(step.certificate, Some(Certificate::Witness(_))));
        }

        let m = md(s, "I1");
        let c = chain(s, &m, &m).unwrap().unwrap();
        assert!(c.steps.is_empty());

        let s = spec(3, 1);
        let c = chain(s, &md(s, "N+"), &md(s, "2*N+ + N-")).unwrap().unwrap();
        assert_eq!(
            c.modules,
            vec![md(s, "N+"), md(s, "N+ + I1"), md(s, "2*N+ + N-")]
        );
    }

    #[test]
    fn hasse_examples() {
        let s = spec(5, 1);
        let h = hasse(s, 1, Some(&StableModule::zero()), 10_000).unwrap();
        assert_eq!(h.nodes, vec![StableModule::zero(), md(s, "I1"), md(s, "I2")]);
        assert_eq!(h.edges, vec![(0, 1), (1, 2)]);
        let dot = h.to_dot();
        assert!(dot.contains("n0 -> n1") && dot.contains("n1 -> n2"));

        let h = hasse(s, 0, None, 10).unwrap();
        assert_eq!(h.nodes.len(), 1);

        let s = spec(3, 1);
        let h = hasse(s, 2, None, 10_000).unwrap();
        let i = h.nodes.iter().position(|n| *n == md(s, "I1")).unwrap();
        let j = h.nodes.iter().position(|n| *n == md(s, "N+ + N-")).unwrap();
        assert!(h.edges.contains(&(i, j)));
    }

    #[test]
    fn knoerrer_invariance_of_decisions() {
        for n in [2u32, 3] {
            for d in 0..=1u32 {
                let lo = spec(n, d);
                let hi = spec(n, d + 2);
                for m in enumerate_modules(lo, 2) {
                    for nn in enumerate_modules(lo, 2) {
                        assert_eq!(
                            leq_st(lo, &m, &nn, false).unwrap().leq,
                            leq_st(hi, &m, &nn, false).unwrap().leq
                        );
                    }
                }
            }
        }
    }
}
