//! Verification sweeps: every check on every instance, with deterministic
//! reports regardless of the number of workers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chromatic::{
    admissible_partition_form, check_leading_form, chromatic_polynomial, chromatic_polynomial_auto,
    count_proper_colorings, induced_a1_table, induced_polynomials, reconstruct_via_b,
};
use crate::error::{Error, Result};
use crate::generate::{exhaustive_uniform, generate, Family};
use crate::hypergraph::{bits, induced, EdgeSet, Hypergraph};
use crate::matroid::{
    euler_inequality_check, hyperforest_table, is_hypercircuit_on, is_partition_connected,
    maximal_bad_partition, partition_connected_decomposition, rank, rank_oracle_bruteforce, RankOracle,
};
use crate::penrose::{
    bounded_expo_check_with, count_connected_spanning_hyperforests, penrose_check,
    sokal_tree_sum_check, verify_structure_theorem,
};
use crate::poly::{decimal, IntPolynomial};
use crate::roots::check_root_bound;
use crate::Caps;

/// Colour counts compared against the oracle.
const ORACLE_COLORS: u64 = 6;
/// Evaluation points `0..=EXPO_POINTS` for the exponential identity.
const EXPO_POINTS: i64 = 3;
/// Largest subset size in the bounded-exponential-type check.
const BOUNDED_EXPO_MAX_S: usize = 6;
/// Largest hypercircuit vertex count checked for partition connectivity.
const HYPERCIRCUIT_MAX_VERTICES: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    Oracle,
    ExpoIdentity,
    Penrose,
    BoundedExpo,
    RankConsistency,
    HyperforestBound,
    PartitionConnectivity,
    BadPartition,
    EulerInequality,
    StructureTheorem,
    RootBounds,
    Sokal,
}

impl CheckName {
    pub const ALL: [CheckName; 12] = [
        CheckName::Oracle,
        CheckName::ExpoIdentity,
        CheckName::Penrose,
        CheckName::BoundedExpo,
        CheckName::RankConsistency,
        CheckName::HyperforestBound,
        CheckName::PartitionConnectivity,
        CheckName::BadPartition,
        CheckName::EulerInequality,
        CheckName::StructureTheorem,
        CheckName::RootBounds,
        CheckName::Sokal,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Oracle => "oracle",
            CheckName::ExpoIdentity => "expo_identity",
            CheckName::Penrose => "penrose",
            CheckName::BoundedExpo => "bounded_expo",
            CheckName::RankConsistency => "rank_consistency",
            CheckName::HyperforestBound => "hyperforest_bound",
            CheckName::PartitionConnectivity => "partition_connectivity",
            CheckName::BadPartition => "bad_partition",
            CheckName::EulerInequality => "euler_inequality",
            CheckName::StructureTheorem => "structure_theorem",
            CheckName::RootBounds => "root_bounds",
            CheckName::Sokal => "sokal",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown check {s:?}")))
    }
}

/// Parses `all` or a comma-separated list of check names, in canonical order
/// and without repeats.
pub fn parse_check_list(spec: &str) -> Result<Vec<CheckName>> {
    if spec.trim() == "all" {
        return Ok(CheckName::ALL.to_vec());
    }
    let mut out = spec
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<Vec<CheckName>>>()?;
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err(Error::InvalidParams("no checks selected".into()));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// An enumeration limit was hit.
    SkippedCap,
    /// The check does not apply, e.g. a graph-only check on a hypergraph.
    SkippedNotApplicable,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedCap => "skipped: cap",
            Status::SkippedNotApplicable => "skipped: n/a",
        }
    }
}

impl Serialize for Status {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: CheckName,
    pub status: Status,
    pub detail: String,
}

/// One hypergraph in a sweep with enough provenance to rebuild it alone.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub id: usize,
    pub family: String,
    /// Seed of the generator call that produced this instance, if random.
    pub seed: Option<u64>,
    pub hypergraph: Hypergraph,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceReport {
    pub instance_id: usize,
    pub family: String,
    pub seed: Option<u64>,
    pub hypergraph: Hypergraph,
    pub n: usize,
    /// Common edge size, absent for edgeless or mixed instances.
    pub t: Option<usize>,
    pub max_degree: usize,
    pub num_edges: usize,
    #[serde(with = "decimal::option")]
    pub a1: Option<BigInt>,
    #[serde(with = "decimal::option")]
    pub n_forests: Option<BigInt>,
    pub max_root_modulus: Option<f64>,
    pub bound_cr: Option<f64>,
    pub bound_8etd: Option<f64>,
    pub checks: Vec<CheckRecord>,
    pub ok: bool,
}

impl InstanceReport {
    pub fn status_of(&self, check: CheckName) -> Option<Status> {
        self.checks.iter().find(|c| c.check == check).map(|c| c.status)
    }

    pub fn has_violation(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn hit_cap(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::SkippedCap)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSummary {
    pub instances: usize,
    pub violations: usize,
    pub capped: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub checks: Vec<CheckName>,
    pub caps: Caps,
    pub instances: Vec<InstanceReport>,
    pub summary: SweepSummary,
}

/// Process exit status for a finished run.
pub mod exit_status {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const VIOLATION: i32 = 2;
    pub const CAP: i32 = 3;
}

impl SweepReport {
    /// 2 on any violation; otherwise 3 when a single instance hit a cap; else 0.
    pub fn exit_status(&self, single_instance: bool) -> i32 {
        if self.summary.violations > 0 {
            exit_status::VIOLATION
        } else if single_instance && self.summary.capped > 0 {
            exit_status::CAP
        } else {
            exit_status::OK
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// One row per instance under [`csv_header`].
    pub fn to_csv(&self) -> String {
        let mut out = csv_header(&self.checks);
        out.push('\n');
        for r in &self.instances {
            let mut cells = vec![
                r.instance_id.to_string(),
                r.family.clone(),
                opt(r.seed),
                r.n.to_string(),
                opt(r.t),
                r.max_degree.to_string(),
                r.num_edges.to_string(),
                opt(r.a1.as_ref()),
                opt(r.n_forests.as_ref()),
                opt(r.max_root_modulus),
                opt(r.bound_cr),
                opt(r.bound_8etd),
            ];
            cells.extend(self.checks.iter().map(|&c| {
                r.status_of(c).map(Status::as_str).unwrap_or("off").to_string()
            }));
            cells.push(if r.ok { "ok" } else { "violation" }.to_string());
            out.push_str(&cells.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }
}

/// Fixed columns followed by one status column per enabled check.
pub fn csv_header(checks: &[CheckName]) -> String {
    let mut cols: Vec<&str> = vec![
        "instance_id",
        "family",
        "seed",
        "n",
        "t",
        "D",
        "num_edges",
        "a1",
        "N",
        "max_root_modulus",
        "bound_cR",
        "bound_8etD",
    ];
    cols.extend(checks.iter().map(|c| c.as_str()));
    cols.push("overall");
    cols.join(",")
}

fn opt<T: fmt::Display>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Short `name key=value ...` label of a family.
pub fn describe(family: &Family) -> String {
    match *family {
        Family::SingleEdge { t } => format!("single_edge t={t}"),
        Family::CompleteUniform { n, t } => format!("complete_uniform n={n} t={t}"),
        Family::TightCycle { n, t } => format!("tight_cycle n={n} t={t}"),
        Family::LoosePath { k, t } => format!("loose_path k={k} t={t}"),
        Family::RandomUniform { n, t, p, .. } => format!("random_uniform n={n} t={t} p={p}"),
        Family::RandomInstance { .. } => "random_instance".to_string(),
    }
}

fn family_seed(family: &Family) -> Option<u64> {
    match *family {
        Family::RandomUniform { seed, .. } | Family::RandomInstance { seed } => Some(seed),
        _ => None,
    }
}

/// A single generated instance.
pub fn family_instance(family: &Family) -> Result<Instance> {
    Ok(Instance {
        id: 0,
        family: describe(family),
        seed: family_seed(family),
        hypergraph: generate(family)?,
    })
}

/// Every `t`-uniform hypergraph on `n` vertices.
pub fn exhaustive_instances(n: usize, t: usize) -> Result<Vec<Instance>> {
    Ok(exhaustive_uniform(n, t)?
        .into_iter()
        .enumerate()
        .map(|(i, h)| Instance {
            id: i,
            family: format!("exhaustive_uniform n={n} t={t} index={i}"),
            seed: None,
            hypergraph: h,
        })
        .collect())
}

/// Every labelled graph on `1..=max_n` vertices.
pub fn all_graphs(max_n: usize) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    if max_n >= 1 {
        out.push(Instance {
            id: 0,
            family: "graph n=1 index=0".into(),
            seed: None,
            hypergraph: Hypergraph::empty(1),
        });
    }
    for n in 2..=max_n {
        for (i, h) in exhaustive_uniform(n, 2)?.into_iter().enumerate() {
            out.push(Instance {
                id: out.len(),
                family: format!("graph n={n} index={i}"),
                seed: None,
                hypergraph: h,
            });
        }
    }
    Ok(out)
}

/// Sub-seeds drawn from a master generator, one per instance.
pub fn sub_seeds(master: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    (0..count).map(|_| rng.next_u64()).collect()
}

/// `count` instances of `template` with the seed replaced by per-instance
/// sub-seeds of `master`. Non-random families are repeated unchanged.
pub fn seeded_instances(template: &Family, count: usize, master: u64) -> Result<Vec<Instance>> {
    sub_seeds(master, count)
        .into_iter()
        .enumerate()
        .map(|(i, sub)| {
            let family = match *template {
                Family::RandomUniform { n, t, p, .. } => Family::RandomUniform { n, t, p, seed: sub },
                Family::RandomInstance { .. } => Family::RandomInstance { seed: sub },
                ref other => other.clone(),
            };
            let mut inst = family_instance(&family)?;
            inst.id = i;
            Ok(inst)
        })
        .collect()
}

/// The mixed random suite: `count` instances with `n <= 7`, `|E| <= 10` and
/// `t` in {2, 3, 4}.
pub fn random_suite(count: usize, master: u64) -> Result<Vec<Instance>> {
    seeded_instances(&Family::RandomInstance { seed: 0 }, count, master)
}

/// Renumbers instances `0..` in order.
pub fn renumber(instances: &mut [Instance]) {
    for (i, inst) in instances.iter_mut().enumerate() {
        inst.id = i;
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub checks: Vec<CheckName>,
    pub caps: Caps,
    pub workers: usize,
    /// Residual tolerance for chromatic roots.
    pub root_tolerance: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            checks: CheckName::ALL.to_vec(),
            caps: Caps::default(),
            workers: 1,
            root_tolerance: 1e-8,
        }
    }
}

/// Runs every enabled check on every instance. Results are merged in
/// instance order, so the report does not depend on `workers`.
pub fn run_sweep(instances: &[Instance], config: &SweepConfig) -> Result<SweepReport> {
    if config.workers == 0 {
        return Err(Error::InvalidParams("worker count must be positive".into()));
    }
    let reports = map_instances(instances, config)?;
    let violations = reports.iter().filter(|r| r.has_violation()).count();
    let capped = reports.iter().filter(|r| r.hit_cap()).count();
    Ok(SweepReport {
        checks: config.checks.clone(),
        caps: config.caps,
        summary: SweepSummary {
            instances: reports.len(),
            violations,
            capped,
            ok: violations == 0,
        },
        instances: reports,
    })
}

#[cfg(feature = "parallel")]
fn map_instances(instances: &[Instance], config: &SweepConfig) -> Result<Vec<InstanceReport>> {
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::InvalidParams(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| {
        instances
            .par_iter()
            .map(|inst| run_instance(inst, config))
            .collect()
    }))
}

#[cfg(not(feature = "parallel"))]
fn map_instances(instances: &[Instance], config: &SweepConfig) -> Result<Vec<InstanceReport>> {
    Ok(instances.iter().map(|inst| run_instance(inst, config)).collect())
}

/// All enabled checks on one instance.
pub fn run_instance(inst: &Instance, config: &SweepConfig) -> InstanceReport {
    let h = &inst.hypergraph;
    let caps = &config.caps;
    let mut report = InstanceReport {
        instance_id: inst.id,
        family: inst.family.clone(),
        seed: inst.seed,
        hypergraph: h.clone(),
        n: h.num_vertices(),
        t: h.uniformity(),
        max_degree: h.max_degree(),
        num_edges: h.num_edges(),
        a1: chromatic_polynomial_auto(h, caps).ok().map(|p| p.coefficient(1)),
        n_forests: count_connected_spanning_hyperforests(h, caps).ok(),
        max_root_modulus: None,
        bound_cr: None,
        bound_8etd: None,
        checks: Vec::with_capacity(config.checks.len()),
        ok: true,
    };
    for &check in &config.checks {
        let outcome = match check {
            CheckName::Oracle => oracle(h, caps),
            CheckName::ExpoIdentity => expo_identity(h, caps),
            CheckName::Penrose => penrose(h, caps),
            CheckName::BoundedExpo => bounded_expo(h, caps),
            CheckName::RankConsistency => rank_consistency(h, caps),
            CheckName::HyperforestBound => hyperforest_bound(h, caps),
            CheckName::PartitionConnectivity => partition_connectivity(h, caps),
            CheckName::BadPartition => bad_partition(h, caps),
            CheckName::EulerInequality => euler_inequality(h, caps),
            CheckName::StructureTheorem => structure(h, caps),
            CheckName::RootBounds => root_bounds(h, caps, config.root_tolerance, &mut report),
            CheckName::Sokal => sokal(h, caps),
        };
        report.checks.push(record(check, outcome));
    }
    report.ok = !report.has_violation();
    report
}

enum Verdict {
    Pass(String),
    Fail(String),
    NotApplicable(String),
}

type Outcome = Result<Verdict>;

fn verdict(ok: bool, detail: String) -> Outcome {
    Ok(if ok { Verdict::Pass(detail) } else { Verdict::Fail(detail) })
}

fn record(check: CheckName, outcome: Outcome) -> CheckRecord {
    let (status, detail) = match outcome {
        Ok(Verdict::Pass(d)) => (Status::Pass, d),
        Ok(Verdict::Fail(d)) => (Status::Fail, d),
        Ok(Verdict::NotApplicable(d)) => (Status::SkippedNotApplicable, d),
        Err(e) if e.is_cap() => (Status::SkippedCap, e.to_string()),
        Err(e @ (Error::NotUniform | Error::NotAGraph)) => (Status::SkippedNotApplicable, e.to_string()),
        Err(e) => (Status::Fail, e.to_string()),
    };
    CheckRecord { check, status, detail }
}

fn oracle(h: &Hypergraph, caps: &Caps) -> Outcome {
    let p = chromatic_polynomial(h, caps)?;
    for q in 0..=ORACLE_COLORS {
        let counted = count_proper_colorings(h, q, caps)?;
        let value = p.eval_i64(q as i64);
        if counted != value {
            return verdict(false, format!("P({q}) = {value} but {counted} proper colourings"));
        }
    }
    check_leading_form(h, &p)?;
    let via_partitions = IntPolynomial::from_falling_factorial(&admissible_partition_form(h, caps)?);
    if via_partitions != p {
        return verdict(false, format!("partition form gives {via_partitions}, subset sum gives {p}"));
    }
    let (rebuilt, _) = reconstruct_via_b(h, caps)?;
    if rebuilt != p {
        return verdict(false, format!("b-function reconstruction gives {rebuilt}, expected {p}"));
    }
    verdict(true, format!("P = {p}"))
}

fn expo_identity(h: &Hypergraph, caps: &Caps) -> Outcome {
    let table = induced_polynomials(h, caps)?;
    let full = h.vertex_set();
    for x in 0..=EXPO_POINTS {
        for y in 0..=EXPO_POINTS {
            if !crate::chromatic::exponential_identity_with(&table, full, x, y) {
                return verdict(false, format!("identity fails at x = {x}, y = {y}"));
            }
        }
    }
    verdict(true, format!("holds for x, y in 0..={EXPO_POINTS}"))
}

fn penrose(h: &Hypergraph, caps: &Caps) -> Outcome {
    let report = penrose_check(h, caps)?;
    let a1 = report.a1_value.clone().unwrap_or_default();
    let forests = report.n_forests.clone().unwrap_or_default();
    let poly_a1 = chromatic_polynomial_auto(h, caps)?.coefficient(1);
    if poly_a1 != a1 {
        return verdict(false, format!("signed connected sum {a1} differs from a1 = {poly_a1}"));
    }
    verdict(report.ok, format!("|a1| = {} vs N = {forests}", a1.abs()))
}

fn bounded_expo(h: &Hypergraph, caps: &Caps) -> Outcome {
    let table = induced_a1_table(h, caps)?;
    let n = h.num_vertices();
    let mut checked = 0;
    for v in 0..n {
        for s in 1..=n.min(BOUNDED_EXPO_MAX_S) {
            let r = bounded_expo_check_with(h, &table, v, s)?;
            checked += 1;
            if !r.ok {
                let rhs = r.bound_rhs.map(|b| b.rhs).unwrap_or_default();
                return verdict(false, format!("v = {v}, s = {s}: {} > {rhs}", r.lhs));
            }
        }
    }
    verdict(true, format!("{checked} (v, s) pairs"))
}

fn rank_consistency(h: &Hypergraph, caps: &Caps) -> Outcome {
    let forests = hyperforest_table(h, caps)?;
    let oracle = RankOracle::new(h, caps)?;
    // Largest hyperforest inside each Z from the hyperforest table alone.
    let mut largest = vec![0usize; forests.len()];
    for z in 0..forests.len() {
        largest[z] = if forests[z] {
            z.count_ones() as usize
        } else {
            bits(z as u64).map(|e| largest[z & !(1 << e)]).max().unwrap_or(0)
        };
    }
    for (z, &best) in largest.iter().enumerate() {
        let r = oracle.rank(z as EdgeSet);
        if r != best {
            return verdict(false, format!("rank({:?}) = {r} but largest hyperforest has {best}", bits(z as u64).collect::<Vec<_>>()));
        }
        if forests[z] != (r == z.count_ones() as usize) {
            return verdict(false, format!("hyperforest flag disagrees with rank on {:?}", bits(z as u64).collect::<Vec<_>>()));
        }
    }
    let all = h.all_edges();
    let direct = rank(h, all, caps)?.rank;
    let brute = rank_oracle_bruteforce(h, all, caps)?;
    if direct != oracle.rank(all) || brute != direct {
        return verdict(false, format!("rank(E): formula {direct}, cached {}, brute force {brute}", oracle.rank(all)));
    }
    verdict(true, format!("{} subsets, rank(E) = {direct}", forests.len()))
}

fn hyperforest_bound(h: &Hypergraph, caps: &Caps) -> Outcome {
    let forests = hyperforest_table(h, caps)?;
    let limit = h.num_vertices().saturating_sub(1);
    let largest = forests
        .iter()
        .enumerate()
        .filter(|(_, &f)| f)
        .map(|(s, _)| s.count_ones() as usize)
        .max()
        .unwrap_or(0);
    let r = RankOracle::new(h, caps)?.rank(h.all_edges());
    verdict(
        largest <= limit && r <= limit && r == largest,
        format!("largest hyperforest {largest}, rank(E) = {r}, |V| - 1 = {limit}"),
    )
}

fn partition_connectivity(h: &Hypergraph, caps: &Caps) -> Outcome {
    let pc = is_partition_connected(h, caps)?;
    let r = RankOracle::new(h, caps)?.rank(h.all_edges());
    let full = h.num_vertices().saturating_sub(1);
    if h.num_vertices() > 0 && pc != (r == full) {
        return verdict(false, format!("partition connected = {pc} but rank(E) = {r}, |V| - 1 = {full}"));
    }
    crate::error::ensure_cap(
        "edge count for subset enumeration",
        h.num_edges() as u128,
        caps.edges as u128,
    )?;
    let masks = h.edge_masks();
    let mut circuits = 0;
    for f in 1u64..1 << h.num_edges() {
        let edges: Vec<_> = bits(f).map(|i| masks[i]).collect();
        let cover = edges.iter().fold(0u64, |a, &e| a | e);
        if cover.count_ones() > HYPERCIRCUIT_MAX_VERTICES || !is_hypercircuit_on(cover, &edges) {
            continue;
        }
        circuits += 1;
        let verts: Vec<usize> = bits(cover).collect();
        let (sub, _) = induced(&h.spanning_subgraph(f), &verts);
        if !is_partition_connected(&sub, caps)? {
            return verdict(false, format!("hypercircuit on {verts:?} is not partition connected"));
        }
    }
    verdict(true, format!("partition connected = {pc}, {circuits} small hypercircuits"))
}

fn bad_partition(h: &Hypergraph, caps: &Caps) -> Outcome {
    let pc = is_partition_connected(h, caps)?;
    let pieces = partition_connected_decomposition(h, caps)?;
    match maximal_bad_partition(h, caps) {
        Err(Error::TheoremViolation(msg)) => verdict(false, msg),
        Err(e) => Err(e),
        Ok(None) => verdict(
            pc && pieces.len() <= 1,
            format!("no bad partition; partition connected = {pc}, {} pieces", pieces.len()),
        ),
        Ok(Some(rec)) => verdict(
            !pc && rec.parts == pieces,
            format!("maximal bad partition {:?} with score {}", rec.parts, rec.score),
        ),
    }
}

fn euler_inequality(h: &Hypergraph, caps: &Caps) -> Outcome {
    let oracle = RankOracle::new(h, caps)?;
    let m = h.num_edges();
    let primal = euler_inequality_check(|s| oracle.rank(s), m, caps)?;
    let dual = euler_inequality_check(|s| oracle.dual_rank(s), m, caps)?;
    verdict(
        primal.ok && dual.ok,
        format!(
            "matroid {} <= {}, dual {} <= {}",
            primal.lhs, primal.basis_count, dual.lhs, dual.basis_count
        ),
    )
}

fn structure(h: &Hypergraph, caps: &Caps) -> Outcome {
    match verify_structure_theorem(h, caps) {
        Err(Error::TheoremViolation(msg)) => verdict(false, msg),
        Err(e) => Err(e),
        Ok(r) => verdict(
            r.ok,
            format!(
                "{} classes, {} reading divergences",
                r.classes.len(),
                r.basis_reading_divergences
            ),
        ),
    }
}

fn root_bounds(h: &Hypergraph, caps: &Caps, tol: f64, report: &mut InstanceReport) -> Outcome {
    let r = check_root_bound(h, tol, caps)?;
    report.max_root_modulus = Some(r.max_modulus);
    report.bound_cr = Some(r.bound_cr);
    report.bound_8etd = Some(r.bound_8etd);
    let worst = r.roots.iter().map(|z| z.residual).fold(0.0, f64::max);
    verdict(
        r.ok_cr && r.ok_8etd && worst <= tol,
        format!(
            "max |z| = {} vs {} and {}, worst residual {worst:e}",
            r.max_modulus, r.bound_cr, r.bound_8etd
        ),
    )
}

fn sokal(h: &Hypergraph, caps: &Caps) -> Outcome {
    if !h.is_graph() {
        return Err(Error::NotAGraph);
    }
    // With D = 0 the right side is 0 while the singleton term is 1; the bound
    // presupposes at least one edge once n >= 2.
    if h.num_vertices() >= 2 && h.max_degree() == 0 {
        return Ok(Verdict::NotApplicable("edgeless graph on at least 2 vertices (D = 0)".into()));
    }
    for v in 0..h.num_vertices() {
        let r = sokal_tree_sum_check(h, v, caps)?;
        if !r.ok {
            let rhs = r.bound_rhs.map(|b| b.rhs).unwrap_or_default();
            return verdict(false, format!("v = {v}: {} > {rhs}", r.lhs));
        }
    }
    verdict(true, format!("{} vertices", h.num_vertices()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_names_round_trip() {
        for c in CheckName::ALL {
            assert_eq!(c.as_str().parse::<CheckName>().unwrap(), c);
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{c}\""));
        }
        assert_eq!(parse_check_list("all").unwrap().len(), 12);
        assert_eq!(
            parse_check_list("root_bounds,penrose,penrose").unwrap(),
            vec![CheckName::Penrose, CheckName::RootBounds]
        );
        assert!(parse_check_list("nope").is_err());
    }

    #[test]
    fn random_suite_is_reproducible_per_instance() {
        let suite = random_suite(20, 7).unwrap();
        for inst in &suite {
            let again = generate(&Family::RandomInstance { seed: inst.seed.unwrap() }).unwrap();
            assert_eq!(again, inst.hypergraph);
            let h = &inst.hypergraph;
            assert!(h.num_vertices() <= 7 && h.num_edges() <= 10);
        }
        assert_eq!(suite, random_suite(20, 7).unwrap());
    }

    #[test]
    fn single_edge_passes_everything() {
        let inst = family_instance(&Family::SingleEdge { t: 3 }).unwrap();
        let report = run_sweep(&[inst], &SweepConfig::default()).unwrap();
        let r = &report.instances[0];
        assert!(r.ok, "{:#?}", r.checks);
        assert_eq!(r.status_of(CheckName::Sokal), Some(Status::SkippedNotApplicable));
        assert_eq!(r.a1, Some(BigInt::from(-1)));
        assert_eq!(report.exit_status(true), 0);
    }

    #[test]
    fn cap_is_reported_not_fatal() {
        let inst = family_instance(&Family::CompleteUniform { n: 7, t: 3 }).unwrap();
        let config = SweepConfig {
            checks: vec![CheckName::Penrose, CheckName::RootBounds],
            ..SweepConfig::default()
        };
        let report = run_sweep(&[inst], &config).unwrap();
        let r = &report.instances[0];
        assert_eq!(r.status_of(CheckName::Penrose), Some(Status::SkippedCap));
        assert_eq!(r.status_of(CheckName::RootBounds), Some(Status::Pass));
        assert_eq!(report.exit_status(true), exit_status::CAP);
        assert_eq!(report.exit_status(false), exit_status::OK);
    }

    #[test]
    fn csv_has_fixed_columns() {
        let inst = family_instance(&Family::TightCycle { n: 5, t: 3 }).unwrap();
        let config = SweepConfig {
            checks: vec![CheckName::Penrose],
            ..SweepConfig::default()
        };
        let csv = run_sweep(&[inst], &config).unwrap().to_csv();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "instance_id,family,seed,n,t,D,num_edges,a1,N,max_root_modulus,bound_cR,bound_8etD,penrose,overall"
        );
        assert!(lines.next().unwrap().starts_with("0,tight_cycle n=5 t=3,,5,3,3,5,"));
    }
}
